"""Normalizing potentials on doubled type-A quivers to monomial form.

A potential here is *Type A* when every consecutive product x_i' x_{i+1}
appears with a nonzero coefficient; it is *reduced* when no loop square
x_s^2 is present, and *monomial* when, apart from those consecutive
products (all with coefficient 1), only pure powers x_i^j remain.

The pipeline:

1. rescale the a-arrows so all consecutive products carry coefficient 1;
2. remove the only non-monomial degree-2 shapes, products x_{s-1}' x_{s+1}
   jumping over a loop, by a_s -> a_s - coeff * x_{s-1}';
3. degree by degree, remove every cycle touching at least two slots by a
   substitution that trades it for cycles whose top slot multiplicity is
   strictly smaller, until only pure powers remain.

Each step is an exact substitution below the truncation, so composing the
recorded substitutions reproduces the output from the input on the nose.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .cycles import Potential, canonical_cycle
from .field import QQ, ZERO
from .quiver import DoubledPathQuiver, Word, double_an
from .series import NCElement
from .subst import Substitution, compose_chain

MAX_PASSES = 20000


# -- term taxonomy ---------------------------------------------------------------


def term_shape(q: DoubledPathQuiver, word: Word) -> Tuple[str, int, int, int]:
    """(kind, degree, lo, hi) where kind is power|middle|skip|other."""
    t = q.x_degrees(word)
    support = [i + 1 for i, c in enumerate(t) if c]
    assert support, "cycle uses no x-letters"
    deg = sum(t)
    lo, hi = support[0], support[-1]
    if lo == hi:
        return ("power", deg, lo, hi)
    if deg == 2 and hi == lo + 1:
        return ("middle", deg, lo, hi)
    if deg == 2 and hi == lo + 2 and q.is_loop(lo + 1) and t[lo] == 0:
        return ("skip", deg, lo, hi)
    return ("other", deg, lo, hi)


@dataclass
class TypeAReport:
    is_type_a: bool
    reduced: bool
    middle_coeffs: Dict[int, QQ] = field(default_factory=dict)
    missing_middles: Tuple[int, ...] = ()
    loop_squares: Tuple[int, ...] = ()

    @property
    def kind(self) -> str:
        if not self.is_type_a:
            return "NotTypeA"
        return "ReducedTypeA" if self.reduced else "TypeA"


def type_a_report(f: Potential) -> TypeAReport:
    q = f.quiver
    assert isinstance(q, DoubledPathQuiver)
    middles: Dict[int, QQ] = {}
    loop_squares = []
    for word, coeff in f.terms.items():
        kind, deg, lo, hi = term_shape(q, word)
        if kind == "middle":
            middles[lo] = coeff
        elif kind == "power" and deg == 2 and q.is_loop(lo):
            loop_squares.append(lo)
    missing = tuple(i for i in range(1, q.m) if middles.get(i, ZERO) == 0)
    return TypeAReport(
        is_type_a=not missing,
        reduced=not loop_squares,
        middle_coeffs=middles,
        missing_middles=missing,
        loop_squares=tuple(sorted(loop_squares)),
    )


@dataclass
class MonomialReport:
    kappa: Dict[Tuple[int, int], QQ]
    truncation: int

    def kappa_at(self, i: int, j: int) -> QQ:
        return self.kappa.get((i, j), ZERO)

    def reduced(self, quiver: DoubledPathQuiver) -> bool:
        return all(not quiver.is_loop(i) for (i, j) in self.kappa if j == 2)


def extract_monomial(f: Potential) -> Optional[MonomialReport]:
    """Kappa table when f is monomial Type A with unit consecutive products."""
    q = f.quiver
    kappa: Dict[Tuple[int, int], QQ] = {}
    middles: Dict[int, QQ] = {}
    for word, coeff in f.terms.items():
        kind, deg, lo, hi = term_shape(q, word)
        if kind == "middle":
            middles[lo] = coeff
        elif kind == "power":
            kappa[(lo, deg)] = coeff
        else:
            return None
    if any(middles.get(i, ZERO) != 1 for i in range(1, q.m)):
        return None
    return MonomialReport(kappa, f.truncation)


def potential_from_kappa(q: DoubledPathQuiver, truncation: int,
                         kappa: Dict[Tuple[int, int], QQ]) -> Potential:
    """Sum of consecutive products plus the given pure powers."""
    f = Potential(q, truncation)
    for i in range(1, q.m):
        word = q.concat(q.xprime_word(i), q.x_word(i + 1))
        assert word is not None
        f.add_cycle(word, 1)
    for (i, j), coeff in kappa.items():
        letter = q.x_word(i)
        word = letter
        for _ in range(j - 1):
            word = q.concat(word, letter)
        f.add_cycle(word, coeff)
    return f


# -- step 1: unit consecutive products ----------------------------------------------


def rescale_middle(f: Potential) -> Tuple[Potential, Substitution]:
    """a_i -> k_i a_i with k_1 = 1 and k_{i+1} = 1/(k_i * lambda_i)."""
    q = f.quiver
    report = type_a_report(f)
    assert report.is_type_a, "every consecutive product must be present"
    k = [QQ(1)]
    for i in range(1, q.m):
        k.append(1 / (k[-1] * report.middle_coeffs[i]))
    images = {}
    for i in range(1, q.m + 1):
        if k[i - 1] != 1:
            images[q.a_index(i)] = NCElement.from_word(
                f.quiver, f.truncation, (q.left_vertex(i), (q.a_index(i),)), k[i - 1]
            )
    sub = Substitution(q, f.truncation, images)
    return sub.apply_potential(f), sub


# -- step 2/3: removal substitutions ----------------------------------------------


def _skip_substitution(f: Potential, word: Word, coeff: QQ) -> Substitution:
    """Kill coeff * x_{s-1}' x_{s+1} via a_s -> a_s - coeff * x_{s-1}'."""
    q = f.quiver
    _, _, lo, hi = term_shape(q, word)
    s = lo + 1
    assert q.is_loop(s)
    a_s = q.a_index(s)
    base = NCElement.from_word(q, f.truncation, (q.left_vertex(s), (a_s,)))
    corr = NCElement.from_word(q, f.truncation, q.xprime_word(s - 1), coeff)
    return Substitution(q, f.truncation, {a_s: base - corr})


def _block_word(q: DoubledPathQuiver, i: int) -> Tuple[int, ...]:
    return q.x_word(i)[1]


def _higher_substitution(f: Potential, word: Word, coeff: QQ) -> Substitution:
    """One removal pass for a cycle touching at least two slots, degree >= 3.

    With r the cycle's top slot and s = r - 1, rotate so one full x_r
    block sits at the end; the replacement a_s -> a_s - coeff * (context)
    cancels the cycle through the consecutive product x_s' x_{s+1} and
    only creates cycles with strictly smaller top-slot data.
    """
    q = f.quiver
    _, deg, lo, hi = term_shape(q, word)
    assert deg >= 3 and hi > lo
    s = hi - 1
    a_s, b_s = q.a_index(s), q.b_index(s)
    ids = word[1]
    L = len(ids)
    block = _block_word(q, hi)
    blen = len(block)

    if q.is_loop(s):
        # rotate any full x_r block to the end; prefix is a cycle at the loop vertex
        doubled = ids + ids
        k = next(i for i in range(L) if doubled[i : i + blen] == block)
        start = (k + blen) % L
        rot = ids[start:] + ids[:start]
        assert rot[L - blen :] == block
        prefix = rot[: L - blen]
        v = q.left_vertex(s)
        image = NCElement.from_word(q, f.truncation, (v, (a_s,))) - NCElement.from_word(
            q, f.truncation, (v, prefix), coeff
        )
        return Substitution(q, f.truncation, {a_s: image})

    # x_s is an edge pair: rotate to start at a b_s immediately preceded by a
    # complete x_r block, then split at the first a_s.
    block_end = block[-1]
    k = next(
        i for i in range(L) if ids[i] == b_s and ids[(i - 1) % L] == block_end
    )
    rot = ids[k:] + ids[:k]
    assert rot[0] == b_s and rot[L - blen :] == block
    i_a = rot.index(a_s)
    p_ids = rot[1:i_a]
    q_ids = rot[i_a + 1 : L - blen]
    u = q.left_vertex(s)
    image_word = (u, p_ids + (a_s,) + q_ids)
    image = NCElement.from_word(q, f.truncation, (u, (a_s,))) - NCElement.from_word(
        q, f.truncation, image_word, coeff
    )
    return Substitution(q, f.truncation, {a_s: image})


def _junk_terms(f: Potential, degree: Optional[int] = None) -> List[Tuple[Word, QQ, Tuple[int, int]]]:
    """Cycles that keep f from being monomial: skips at degree 2, every
    multi-slot cycle at degree >= 3. Returns (word, coeff, (top slot, top count))."""
    q = f.quiver
    out = []
    for word, coeff in f.terms.items():
        kind, deg, lo, hi = term_shape(q, word)
        if degree is not None and deg != degree:
            continue
        if kind == "skip" or (kind == "other" and deg >= 3) or (kind == "middle" and deg >= 3):
            t = q.x_degrees(word)
            out.append((word, coeff, (hi, t[hi - 1])))
    return out


def _degrees_with_junk(f: Potential) -> List[int]:
    q = f.quiver
    degs = set()
    for word, _ in f.terms.items():
        kind, deg, lo, hi = term_shape(q, word)
        if kind in ("skip", "other"):
            degs.add(deg)
    return sorted(degs)


def monomialize(f: Potential, emit_substitution: bool = False,
                require_reduced: bool = True) -> Tuple[Potential, MonomialReport, Optional[Substitution]]:
    """Transform a Type A potential to monomial form below its truncation."""
    report = type_a_report(f)
    assert report.is_type_a, f"missing consecutive products at {report.missing_middles}"
    if require_reduced:
        assert report.reduced, f"loop squares present at {report.loop_squares}"
    g, steps = _monomialize_core(f)
    mono = extract_monomial(g)
    assert mono is not None, "normalization left a non-monomial term"
    if require_reduced:
        assert mono.reduced(g.quiver), "a loop square appeared during normalization"
    total = compose_chain(steps, f.quiver, f.truncation) if emit_substitution else None
    return g, mono, total


def _monomialize_core(f: Potential) -> Tuple[Potential, List[Substitution]]:
    q = f.quiver
    steps: List[Substitution] = []

    def rescale(g: Potential) -> Potential:
        rep = type_a_report(g)
        assert rep.is_type_a, "a consecutive product vanished during normalization"
        if any(c != 1 for c in rep.middle_coeffs.values()):
            g, sub = rescale_middle(g)
            steps.append(sub)
        return g

    f = rescale(f)

    # degree 2: kill loop-jumping products, then repair any drift the kill
    # causes to consecutive products when loop squares are around
    guard = 0
    while True:
        skips = [item for item in _junk_terms(f, degree=2)]
        if not skips:
            break
        word, coeff, _ = skips[0]
        sub = _skip_substitution(f, word, coeff)
        f = sub.apply_potential(f)
        steps.append(sub)
        guard += 1
        assert guard < MAX_PASSES
    f = rescale(f)

    # higher degrees, ascending; each removal only adds junk at the same
    # degree with smaller top-slot data or at strictly higher degrees
    d = 3
    while d < f.truncation:
        guard = 0
        while True:
            junk = _junk_terms(f, degree=d)
            if not junk:
                break
            word, coeff, _measure = max(junk, key=lambda it: (it[2], it[0][1]))
            sub = _higher_substitution(f, word, coeff)
            f = sub.apply_potential(f)
            steps.append(sub)
            guard += 1
            assert guard < MAX_PASSES
        remaining = _degrees_with_junk(f)
        d = remaining[0] if remaining else f.truncation
    return f, steps


# -- loop insertion and elimination ---------------------------------------------------


def _relabel(old: DoubledPathQuiver, new: DoubledPathQuiver, slot_map: Dict[int, int]):
    """Arrow index map induced by a slot renumbering."""
    amap: Dict[int, int] = {}
    for i_old, i_new in slot_map.items():
        amap[old.a_index(i_old)] = new.a_index(i_new)
        b_old = old.b_index(i_old)
        if b_old is not None:
            b_new = new.b_index(i_new)
            assert b_new is not None
            amap[b_old] = b_new
    return amap


def _map_potential(f: Potential, new_q: DoubledPathQuiver, amap: Dict[int, int]) -> Potential:
    out = Potential(new_q, f.truncation)
    for (tail, ids), coeff in f.terms.items():
        new_ids = tuple(amap[i] for i in ids)
        new_tail = new_q.arrows[new_ids[0]].tail
        out.add_cycle((new_tail, new_ids), coeff)
    return out


def add_loop(f: Potential, vertex: int) -> Potential:
    """Insert a loop at a loopless vertex; the result is monomial Type A
    with coefficient -1/2 on the new loop's square and the same Jacobi
    algebra after deleting nothing (the two presentations correspond)."""
    q = f.quiver
    assert isinstance(q, DoubledPathQuiver)
    assert vertex in q.loopless, "vertex already carries a loop"
    assert extract_monomial(f) is not None, "input must be monomial"
    new_q = double_an(q.n, sorted(q.loopless - {vertex}))
    # new loop slot index
    t = next(i for i in range(1, new_q.m + 1) if new_q.is_loop(i) and new_q.left_vertex(i) == vertex)
    slot_map = {i: (i if i < t else i + 1) for i in range(1, q.m + 1)}
    g = _map_potential(f, new_q, _relabel(q, new_q, slot_map))
    # seed the loop square, then absorb the neighbors into the loop
    loop_word = new_q.x_word(t)
    g.add_cycle(new_q.concat(loop_word, loop_word), QQ(-1, 2))
    a_t = new_q.a_index(t)
    image = NCElement.from_word(new_q, f.truncation, (vertex, (a_t,)))
    if t > 1:
        image = image - NCElement.from_word(new_q, f.truncation, new_q.xprime_word(t - 1))
    if t < new_q.m:
        image = image - NCElement.from_word(new_q, f.truncation, new_q.x_word(t + 1))
    sub = Substitution(new_q, f.truncation, {a_t: image})
    out = sub.apply_potential(g)
    mono = extract_monomial(out)
    assert mono is not None and mono.kappa_at(t, 2) == QQ(-1, 2)
    return out


def eliminate_loop(f: Potential, vertex: int) -> Potential:
    """Remove the loop at ``vertex`` from a monomial potential whose loop
    square there has an invertible coefficient, by substituting the unique
    series solving the loop's derivative equation, then renormalizing on
    the smaller quiver."""
    q = f.quiver
    assert isinstance(q, DoubledPathQuiver)
    mono = extract_monomial(f)
    assert mono is not None, "input must be monomial"
    s = next(
        (i for i in range(1, q.m + 1) if q.is_loop(i) and q.left_vertex(i) == vertex),
        None,
    )
    assert s is not None, "vertex carries no loop"
    k2 = mono.kappa_at(s, 2)
    assert k2 != 0, "loop square coefficient must be invertible"
    D = f.truncation

    neighbors = NCElement.zero(q, D)
    if s > 1:
        neighbors = neighbors + NCElement.from_word(q, D, q.xprime_word(s - 1))
    if s < q.m:
        neighbors = neighbors + NCElement.from_word(q, D, q.x_word(s + 1))
    higher = [(j, mono.kappa_at(s, j)) for (i, j) in mono.kappa if i == s and j >= 3]

    # x_s = -(neighbors + sum_j j kappa_{s,j} x_s^{j-1}) / (2 kappa_{s,2}),
    # solved by iteration; each round is exact below the truncation
    inv = -1 / (2 * k2)
    sol = NCElement.zero(q, D)
    for _ in range(D + 1):
        correction = neighbors.copy()
        for j, kj in higher:
            power = NCElement.lazy(q, D, vertex)
            for _ in range(j - 1):
                power = power * sol
            correction = correction + power.scale(j * kj)
        new_sol = correction.scale(inv)
        if new_sol == sol:
            break
        sol = new_sol
    # the derivative equation must hold on the nose below the truncation
    check = neighbors.copy()
    check = check + sol.scale(2 * k2)
    for j, kj in higher:
        power = NCElement.lazy(q, D, vertex)
        for _ in range(j - 1):
            power = power * sol
        check = check + power.scale(j * kj)
    assert check.is_zero(), "loop equation not solved below the truncation"

    sub = Substitution(q, D, {q.a_index(s): sol})
    g = sub.apply_potential(f)

    new_q = double_an(q.n, sorted(q.loopless | {vertex}))
    slot_map = {i: (i if i < s else i - 1) for i in range(1, q.m + 1) if i != s}
    h = _map_potential(g, new_q, _relabel(q, new_q, slot_map))
    h, _steps = _monomialize_core(h)
    assert extract_monomial(h) is not None
    return h
