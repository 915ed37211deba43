"""Cycles up to rotation, and potentials built from them.

A potential is a rational combination of cyclic paths where two words
that differ by rotation are the same term. Each class is stored by its
canonical representative: the rotation whose arrow index sequence is
lexicographically smallest.
"""

from __future__ import annotations

from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .field import QQ, ZERO, rational, rational_str
from .quiver import DoubledPathQuiver, Quiver, Word, double_an
from .series import NCElement


def canonical_cycle(quiver: Quiver, word: Word) -> Word:
    """Minimal rotation of a nonempty cycle word."""
    tail, ids = word
    assert ids, "lazy paths are not cycles"
    assert quiver.head_of(word) == tail, "word is not closed"
    best = ids
    for k in range(1, len(ids)):
        rot = ids[k:] + ids[:k]
        if rot < best:
            best = rot
    return (quiver.arrows[best[0]].tail, best)


def rotations(quiver: Quiver, word: Word) -> List[Word]:
    tail, ids = word
    out = []
    seen = set()
    for k in range(len(ids)):
        rot = ids[k:] + ids[:k]
        if rot in seen:
            continue
        seen.add(rot)
        out.append((quiver.arrows[rot[0]].tail, rot))
    return out


def cycle_from_slots(quiver: DoubledPathQuiver, spec: Sequence[Tuple[int, bool]]) -> Word:
    """Cycle word from x-letters: spec item (i, primed) means x_i' if primed.

    Consecutive letters must be composable; the whole word must close up.
    """
    assert spec, "empty x-word"
    word: Optional[Word] = None
    for i, primed in spec:
        letter = quiver.xprime_word(i) if primed else quiver.x_word(i)
        word = letter if word is None else quiver.concat(word, letter)
        assert word is not None, f"x-letters do not compose at slot {i}"
    assert quiver.head_of(word) == word[0], "x-word does not close up"
    return canonical_cycle(quiver, word)


class Potential:
    __slots__ = ("quiver", "truncation", "terms")

    def __init__(self, quiver: Quiver, truncation: int, terms: Optional[Dict[Word, QQ]] = None):
        self.quiver = quiver
        self.truncation = truncation
        self.terms: Dict[Word, QQ] = {}
        if terms:
            for word, coeff in terms.items():
                self.add_cycle(word, coeff)

    def copy(self) -> "Potential":
        out = Potential(self.quiver, self.truncation)
        out.terms = dict(self.terms)
        return out

    def add_cycle(self, word: Word, coeff) -> None:
        coeff = QQ(coeff)
        if coeff == 0 or self.quiver.weight_of(word) >= self.truncation:
            return
        key = canonical_cycle(self.quiver, word)
        acc = self.terms.get(key, ZERO) + coeff
        if acc == 0:
            self.terms.pop(key, None)
        else:
            self.terms[key] = acc

    # -- arithmetic ----------------------------------------------------------

    def _compatible(self, other: "Potential") -> None:
        assert self.quiver is other.quiver and self.truncation == other.truncation

    def __add__(self, other: "Potential") -> "Potential":
        self._compatible(other)
        out = self.copy()
        for word, coeff in other.terms.items():
            out.add_cycle(word, coeff)
        return out

    def __sub__(self, other: "Potential") -> "Potential":
        return self + other.scale(-1)

    def scale(self, coeff) -> "Potential":
        coeff = QQ(coeff)
        out = Potential(self.quiver, self.truncation)
        if coeff != 0:
            out.terms = {w: coeff * c for w, c in self.terms.items()}
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, Potential):
            return NotImplemented
        self._compatible(other)
        return self.terms == other.terms

    def __hash__(self):
        raise TypeError("Potential is not hashable")

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, word: Word) -> QQ:
        return self.terms.get(canonical_cycle(self.quiver, word), ZERO)

    def truncate(self, truncation: int) -> "Potential":
        out = Potential(self.quiver, truncation)
        for word, coeff in self.terms.items():
            out.add_cycle(word, coeff)
        return out

    def as_element(self) -> NCElement:
        return NCElement(self.quiver, self.truncation, dict(self.terms))

    @classmethod
    def from_element(cls, el: NCElement) -> "Potential":
        return cls(el.quiver, el.truncation, dict(el.terms))

    # -- cyclic derivative -----------------------------------------------------

    def cyclic_derivative(self, arrow_name: str) -> NCElement:
        """Sum over occurrences: rotate the occurrence to the front, delete it.

        The result is a path from head(a) to tail(a).
        """
        a = self.quiver.by_name[arrow_name]
        out: Dict[Word, QQ] = {}
        for (tail, ids), coeff in self.terms.items():
            for k, idx in enumerate(ids):
                if idx != a.index:
                    continue
                rest = ids[k + 1 :] + ids[:k]
                word = (a.head, rest)
                acc = out.get(word, ZERO) + coeff
                if acc == 0:
                    out.pop(word, None)
                else:
                    out[word] = acc
        return NCElement(self.quiver, self.truncation, out)

    # -- x-statistics (doubled quivers only) -----------------------------------

    def _stats(self, word: Word) -> Tuple[int, int, int]:
        """(x-degree, leftmost slot, rightmost slot) of a cycle."""
        q = self.quiver
        assert isinstance(q, DoubledPathQuiver)
        t = q.x_degrees(word)
        support = [i + 1 for i, c in enumerate(t) if c]
        assert support, "cycle avoids every x-letter"
        return (sum(t), support[0], support[-1])

    def project(self, selector: str, *args: int) -> "Potential":
        """Sub-sum of terms picked by x-statistics.

        selector: 'xdeg_eq' d | 'xdeg_lt' d | 'block' i j | 'through' s
        block keeps terms whose x-support lies inside slots i..j; through
        keeps terms whose support interval contains slot s.
        """
        out = Potential(self.quiver, self.truncation)
        for word, coeff in self.terms.items():
            deg, lo, hi = self._stats(word)
            keep = False
            if selector == "xdeg_eq":
                keep = deg == args[0]
            elif selector == "xdeg_lt":
                keep = deg < args[0]
            elif selector == "block":
                keep = args[0] <= lo and hi <= args[1]
            elif selector == "through":
                keep = lo <= args[0] <= hi
            else:
                raise ValueError(f"unknown selector {selector!r}")
            if keep:
                out.terms[word] = coeff
        return out

    def min_x_degree(self) -> Optional[int]:
        if not self.terms:
            return None
        return min(self._stats(w)[0] for w in self.terms)

    def x_degrees_present(self) -> List[int]:
        return sorted({self._stats(w)[0] for w in self.terms})

    # -- i/o --------------------------------------------------------------------

    def sorted_items(self):
        return sorted(
            self.terms.items(),
            key=lambda kv: (len(kv[0][1]), kv[0][1]),
        )

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*{self.quiver.format_word(w)}" for w, c in self.sorted_items())

    def to_json_dict(self) -> dict:
        q = self.quiver
        assert isinstance(q, DoubledPathQuiver), "JSON schema covers doubled quivers"
        return {
            "quiver": {"n": q.n, "loopless": sorted(q.loopless)},
            "truncation": self.truncation,
            "terms": [
                {"coeff": rational_str(c), "arrows": list(q.word_names(w))}
                for w, c in self.sorted_items()
            ],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "Potential":
        qinfo = data["quiver"]
        quiver = double_an(int(qinfo["n"]), [int(v) for v in qinfo.get("loopless", [])])
        out = cls(quiver, int(data["truncation"]))
        for term in data["terms"]:
            word = quiver.word_from_names(term["arrows"])
            assert quiver.head_of(word) == word[0], "term is not a cycle"
            out.add_cycle(word, rational(term["coeff"]))
        return out


def x_monomial(quiver: DoubledPathQuiver, truncation: int, spec: Sequence[Tuple[int, bool]], coeff=1) -> Potential:
    out = Potential(quiver, truncation)
    out.add_cycle(cycle_from_slots(quiver, spec), coeff)
    return out
