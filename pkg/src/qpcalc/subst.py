"""Arrow substitutions (truncated algebra endomorphisms).

A substitution maps each arrow to a path series with the same endpoints;
it extends multiplicatively to words and linearly to series, everything
modulo the truncation. Composition order: ``compose(s1, s2)`` applies
``s1`` first.
"""

from __future__ import annotations

from typing import Dict, Optional, Union

from .field import QQ, ZERO
from .linalg import det_dense
from .quiver import Quiver, Word
from .series import NCElement
from .cycles import Potential


class Substitution:
    __slots__ = ("quiver", "truncation", "images")

    def __init__(self, quiver: Quiver, truncation: int, images: Optional[Dict[Union[str, int], NCElement]] = None):
        self.quiver = quiver
        self.truncation = truncation
        self.images: Dict[int, NCElement] = {}
        if images:
            for key, el in images.items():
                a = quiver.by_name[key] if isinstance(key, str) else quiver.arrows[key]
                assert el.quiver is quiver and el.truncation == truncation
                for word in el.terms:
                    assert word[0] == a.tail and quiver.head_of(word) == a.head, (
                        f"image of {a.name} must run {a.tail} -> {a.head}"
                    )
                self.images[a.index] = el

    @classmethod
    def identity(cls, quiver: Quiver, truncation: int) -> "Substitution":
        return cls(quiver, truncation)

    def image_of(self, index: int) -> NCElement:
        el = self.images.get(index)
        if el is not None:
            return el
        a = self.quiver.arrows[index]
        return NCElement.from_word(self.quiver, self.truncation, (a.tail, (a.index,)))

    # -- application -------------------------------------------------------

    def apply_word(self, word: Word) -> NCElement:
        tail, ids = word
        acc = NCElement.lazy(self.quiver, self.truncation, tail)
        for idx in ids:
            acc = acc * self.image_of(idx)
            if acc.is_zero():
                break
        return acc

    def apply_element(self, el: NCElement) -> NCElement:
        assert el.quiver is self.quiver
        out = NCElement.zero(self.quiver, self.truncation)
        for word, coeff in el.terms.items():
            out = out + self.apply_word(word).scale(coeff)
        return out

    def apply_potential(self, f: Potential) -> Potential:
        assert f.quiver is self.quiver
        out = Potential(self.quiver, min(f.truncation, self.truncation))
        for word, coeff in f.terms.items():
            img = self.apply_word(word)
            for w, c in img.terms.items():
                out.add_cycle(w, coeff * c)
        return out

    # -- structure -----------------------------------------------------------

    def linear_part(self):
        """Matrix L with L[j][i] = coefficient of arrow j inside the image of arrow i."""
        n = len(self.quiver.arrows)
        mat = [[ZERO for _ in range(n)] for _ in range(n)]
        for i in range(n):
            img = self.image_of(i)
            for (tail, ids), coeff in img.terms.items():
                if len(ids) == 1:
                    mat[ids[0]][i] = coeff
        return mat

    def is_unitriangular(self) -> bool:
        """True when every arrow maps to itself plus longer words."""
        for i, img in self.images.items():
            a = self.quiver.arrows[i]
            base = (a.tail, (i,))
            if img.coeff(base) != 1:
                return False
            for word in img.terms:
                if word != base and self.quiver.weight_of(word) <= a.weight:
                    return False
        return True

    def depth(self) -> Optional[int]:
        """min over arrows of (weight of the lightest correction term) - 1.

        None means the substitution is the identity below the truncation.
        """
        best = None
        for i, img in self.images.items():
            a = self.quiver.arrows[i]
            delta = img - NCElement.from_word(self.quiver, self.truncation, (a.tail, (i,)))
            w = delta.min_weight()
            if w is None:
                continue
            d = w - 1
            best = d if best is None else min(best, d)
        return best

    def is_invertible(self) -> bool:
        return det_dense(self.linear_part()) != 0

    def __repr__(self) -> str:
        bits = []
        for i in sorted(self.images):
            bits.append(f"{self.quiver.arrows[i].name} -> {self.images[i]!r}")
        return "Substitution(" + "; ".join(bits) + ")" if bits else "Substitution(identity)"


def compose(first: Substitution, second: Substitution) -> Substitution:
    """Substitution doing ``first`` then ``second``."""
    assert first.quiver is second.quiver and first.truncation == second.truncation
    touched = set(first.images) | set(second.images)
    images = {i: second.apply_element(first.image_of(i)) for i in touched}
    out = Substitution(first.quiver, first.truncation)
    out.images = images
    return out


def compose_chain(subs, quiver: Quiver, truncation: int) -> Substitution:
    acc = Substitution.identity(quiver, truncation)
    for s in subs:
        acc = compose(acc, s)
    return acc
