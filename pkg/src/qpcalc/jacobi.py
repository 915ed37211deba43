"""Jacobi algebras of potentials: relations, dimensions, quotients.

The relation set of a potential is its cyclic derivative along every
arrow. Dimensions are counted modulo m^D (paths of weight >= D vanish)
with a certificate:

* ``Exact``: completion covered every ambiguity below D, an empty weight
  window at the top shows no irreducible word can continue past it, and a
  rerun at D+2 reproduces the same counts.
* ``LowerBound``: the count is dim(algebra / m^D), a lower bound for the
  (possibly infinite) true dimension.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .cycles import Potential
from .field import QQ, ZERO
from .linalg import RowSpace
from .quiver import Quiver, Word
from .series import NCElement
from .rewrite import ReductionSystem, system_from_relations

EXACT = "Exact"
LOWER_BOUND = "LowerBound"


def jacobi_relations(f: Potential) -> List[NCElement]:
    rels = []
    for arrow in f.quiver.arrows:
        d = f.cyclic_derivative(arrow.name)
        if not d.is_zero():
            rels.append(d)
    return rels


def delete_vertices(quiver: Quiver, relations: Iterable[NCElement], removed: Sequence[int],
                    truncation: int) -> Tuple[Quiver, List[NCElement]]:
    """Quotient by the idempotents of ``removed``: drop the vertices, their
    arrows, and every relation term whose path touches them."""
    removed_set = set(removed)
    assert removed_set <= set(quiver.vertices)
    kept_vertices = [v for v in quiver.vertices if v not in removed_set]
    id_map: Dict[int, int] = {}
    specs = []
    for a in quiver.arrows:
        if a.tail in removed_set or a.head in removed_set:
            continue
        id_map[a.index] = len(specs)
        specs.append((a.name, a.tail, a.head, a.weight))
    small = Quiver(kept_vertices, specs)
    mapped: List[NCElement] = []
    for el in relations:
        out: Dict[Word, QQ] = {}
        for (tail, ids), coeff in el.terms.items():
            if tail in removed_set or any(i not in id_map for i in ids):
                continue
            out[(tail, tuple(id_map[i] for i in ids))] = coeff
        mapped_el = NCElement(small, truncation, out)
        if not mapped_el.is_zero():
            mapped.append(mapped_el)
    return small, mapped


@dataclass
class DimensionReport:
    value: int
    certificate: str
    truncation: int
    counts: Tuple[int, ...]

    def as_pair(self) -> Tuple[int, str]:
        return (self.value, self.certificate)


def _count_run(quiver: Quiver, relations: List[NCElement], truncation: int) -> Tuple[List[int], bool, ReductionSystem]:
    """Counts per weight plus a soundness flag for 'nothing lives on'.

    Once the counts end with an empty window wider than the heaviest
    arrow, no irreducible word can exist beyond it: any longer word would
    have a prefix landing inside the window, and every proper prefix of
    an irreducible word is irreducible. The window must sit strictly
    below the truncation so its emptiness is itself certified.
    """
    rels = [r.truncate(truncation) for r in relations]
    system = system_from_relations(quiver, truncation, rels)
    counts = system.irreducible_counts(truncation)
    gap = max(a.weight for a in quiver.arrows) if quiver.arrows else 1
    top = max((i for i, c in enumerate(counts) if c), default=-1)
    closed = top + gap + 2 <= truncation
    return counts, closed, system


def jdim(f: Potential, truncation: Optional[int] = None, quotient_vertices: Sequence[int] = ()) -> DimensionReport:
    """Dimension of Jac(f), optionally after deleting vertex idempotents."""
    truncation = truncation or f.truncation
    relations = jacobi_relations(f.truncate(truncation))
    quiver = f.quiver
    if quotient_vertices:
        quiver, relations = delete_vertices(quiver, relations, quotient_vertices, truncation)
    counts, empty, _ = _count_run(quiver, relations, truncation)
    value = sum(counts)
    if not empty:
        return DimensionReport(value, LOWER_BOUND, truncation, tuple(counts))
    recounts, re_empty, _ = _count_run(quiver, relations, truncation + 2)
    padded = list(counts) + [0, 0]
    if re_empty and recounts == padded:
        return DimensionReport(value, EXACT, truncation, tuple(counts))
    return DimensionReport(value, LOWER_BOUND, truncation, tuple(counts))


@dataclass
class Fingerprint:
    total: Tuple[int, str]
    ends: Tuple[Tuple[int, str], Tuple[int, str]]  # sorted pair

    def __eq__(self, other):
        return isinstance(other, Fingerprint) and self.total == other.total and self.ends == other.ends


def fingerprint(f: Potential, truncation: Optional[int] = None) -> Fingerprint:
    """(dim, unordered {dim after deleting vertex 1, ... vertex n})."""
    from .quiver import DoubledPathQuiver

    q = f.quiver
    assert isinstance(q, DoubledPathQuiver)
    total = jdim(f, truncation).as_pair()
    left = jdim(f, truncation, quotient_vertices=[1]).as_pair()
    right = jdim(f, truncation, quotient_vertices=[q.n]).as_pair()
    return Fingerprint(total, tuple(sorted([left, right])))


# -- independent dimension oracle ---------------------------------------------


def _max_paths_guard() -> int:
    return int(os.environ.get("QP_MAX_PATHS", "20000"))


def all_paths(quiver: Quiver, max_weight: int, max_paths: Optional[int] = None) -> List[Word]:
    """Every path word of weight < max_weight, lazies included."""
    cap = max_paths if max_paths is not None else _max_paths_guard()
    out: List[Word] = []
    stack = [((v, ()), 0, v) for v in quiver.vertices]
    while stack:
        word, weight, at = stack.pop()
        out.append(word)
        if len(out) > cap:
            raise RuntimeError(f"path census exceeded {cap}; raise QP_MAX_PATHS to proceed")
        for a in quiver.arrows_by_tail[at]:
            w2 = weight + a.weight
            if w2 < max_weight:
                stack.append(((word[0], word[1] + (a.index,)), w2, a.head))
    return out


def jdim_oracle(quiver: Quiver, relations: Iterable[NCElement], truncation: int,
                max_paths: Optional[int] = None) -> int:
    """dim of (paths below truncation) / (two-sided span of the relations).

    No rewriting: saturate the relation span by one-arrow products on both
    sides inside an exact echelon, then subtract the rank from the path
    census. Agrees with jdim's count for the same truncation.
    """
    paths = all_paths(quiver, truncation, max_paths)
    space = RowSpace()
    queue = deque()
    for rel in relations:
        vec = dict(rel.truncate(truncation).terms)
        if vec:
            queue.append(vec)
    while queue:
        vec = space.reduce(queue.popleft())
        if not vec:
            continue
        pivot = max(vec)
        inv = 1 / vec[pivot]
        vec = {k: v * inv for k, v in vec.items()}
        space.rows[pivot] = vec
        for a in quiver.arrows:
            left: Dict[Word, QQ] = {}
            right: Dict[Word, QQ] = {}
            for (tail, ids), coeff in vec.items():
                if a.head == tail and quiver.weight_of((a.tail, (a.index,) + ids)) < truncation:
                    left[(a.tail, (a.index,) + ids)] = coeff
                if quiver.head_of((tail, ids)) == a.tail and quiver.weight_of((tail, ids + (a.index,))) < truncation:
                    right[(tail, ids + (a.index,))] = coeff
            if left:
                queue.append(left)
            if right:
                queue.append(right)
    return len(paths) - space.rank


# -- commutativity of vertex subalgebras ----------------------------------------


@dataclass
class CommutativityReport:
    commutes: bool
    vertex: Optional[int] = None
    witness: Optional[NCElement] = None
    pair: Optional[Tuple[Word, Word]] = None


def vertex_commutativity(f: Potential, truncation: Optional[int] = None,
                         generation_degree: int = 6) -> CommutativityReport:
    """Check each vertex subalgebra e_v Jac(f) e_v is commutative mod m^D.

    Generators: irreducible cycles at the vertex up to the generation
    degree. The first nonvanishing commutator is returned as a witness.
    """
    truncation = truncation or f.truncation
    relations = jacobi_relations(f.truncate(truncation))
    system = system_from_relations(f.quiver, truncation, relations)
    for v in f.quiver.vertices:
        cycles = [
            w
            for w, weight in system.iter_irreducible(min(generation_degree + 1, truncation), tails=[v])
            if weight >= 1 and f.quiver.head_of(w) == v
        ]
        cycles.sort(key=system.key)
        for i in range(len(cycles)):
            for j in range(i + 1, len(cycles)):
                c1 = NCElement.from_word(f.quiver, truncation, cycles[i])
                c2 = NCElement.from_word(f.quiver, truncation, cycles[j])
                comm = system.reduce(c1 * c2 - c2 * c1)
                if not comm.is_zero():
                    return CommutativityReport(False, v, comm, (cycles[i], cycles[j]))
    return CommutativityReport(True)


def same_ideal_below(quiver: Quiver, rels_a: Iterable[NCElement], rels_b: Iterable[NCElement],
                     truncation: int) -> bool:
    """Mutual reduction: the two relation sets generate the same ideal mod m^D."""
    rels_a = [r.truncate(truncation) for r in rels_a]
    rels_b = [r.truncate(truncation) for r in rels_b]
    sys_a = system_from_relations(quiver, truncation, rels_a)
    sys_b = system_from_relations(quiver, truncation, rels_b)
    return all(sys_a.reduce(r).is_zero() for r in rels_b) and all(
        sys_b.reduce(r).is_zero() for r in rels_a
    )
