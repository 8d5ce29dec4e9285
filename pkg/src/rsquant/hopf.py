"""Coproduct, counit and antipode of U_{r,s}(g), plus low-degree axiom checks."""

from __future__ import annotations

from itertools import product
from typing import Dict, List, Optional, Tuple

from .freealg import E, F, W, WP, Element, Gen, TensorElement, Word, apply_map, make_word
from .scalars import ONE, ZERO, Scalar
from .urs import SerreContext, UrsAlgebra

Triple = Dict[Tuple[Word, Word, Word], Scalar]


class HopfMaps:
    def __init__(self, alg: UrsAlgebra):
        self.alg = alg
        self._letter_cache: Dict[Gen, TensorElement] = {}
        self._word_cache: Dict[Word, TensorElement] = {}

    # generators ----------------------------------------------------------
    def letter_coproduct(self, g: Gen) -> TensorElement:
        hit = self._letter_cache.get(g)
        if hit is not None:
            return hit
        if g.kind == "E":
            a = self.alg.alpha(g.arg)
            terms = {((g,), ()): ONE, ((W(a),), (g,)): ONE}
        elif g.kind == "F":
            a = self.alg.alpha(g.arg)
            terms = {((), (g,)): ONE, ((g,), (WP(a),)): ONE}
        else:
            terms = {((g,), (g,)): ONE}
        hit = self._letter_cache[g] = TensorElement(terms)
        return hit

    def word_coproduct(self, word: Word) -> TensorElement:
        hit = self._word_cache.get(word)
        if hit is not None:
            return hit
        if not word:
            hit = TensorElement({((), ()): ONE})
        else:
            hit = self.word_coproduct(word[:-1]) * self.letter_coproduct(word[-1])
        self._word_cache[word] = hit
        return hit

    def coproduct(self, x: Element) -> TensorElement:
        out = TensorElement()
        for word, c in x.terms.items():
            out = out + self.word_coproduct(word).scale(c)
        return out

    @staticmethod
    def word_counit(word: Word) -> Scalar:
        return ZERO if any(g.kind in ("E", "F") for g in word) else ONE

    def counit(self, x: Element) -> Scalar:
        total = ZERO
        for word, c in x.terms.items():
            if self.word_counit(word).is_one():
                total = total + c
        return total

    def antipode(self, x: Element) -> Element:
        alg = self.alg

        def image(g: Gen) -> Element:
            if g.kind == "E":
                return -(alg.w_mu(tuple(-k for k in alg.alpha(g.arg))) * Element.gen(g))
            if g.kind == "F":
                return -(Element.gen(g) * alg.wp_mu(tuple(-k for k in alg.alpha(g.arg))))
            return Element.gen(Gen(g.kind, tuple(-k for k in g.arg)))

        return apply_map(image, x, "anti-homomorphism")

    # tensor utilities ----------------------------------------------------
    def apply_left(self, t: TensorElement) -> Triple:
        """``(Delta (x) id)`` of a tensor."""
        out: Triple = {}
        for (a, b), c in t.terms.items():
            for (a1, a2), d in self.word_coproduct(a).terms.items():
                _acc(out, (a1, a2, b), c * d)
        return _clean(out)

    def apply_right(self, t: TensorElement) -> Triple:
        out: Triple = {}
        for (a, b), c in t.terms.items():
            for (b1, b2), d in self.word_coproduct(b).terms.items():
                _acc(out, (a, b1, b2), c * d)
        return _clean(out)

    def counit_left(self, t: TensorElement) -> Element:
        out: Dict[Word, Scalar] = {}
        for (a, b), c in t.terms.items():
            if self.word_counit(a).is_one():
                out[b] = out[b] + c if b in out else c
        return Element(out)

    def counit_right(self, t: TensorElement) -> Element:
        out: Dict[Word, Scalar] = {}
        for (a, b), c in t.terms.items():
            if self.word_counit(b).is_one():
                out[a] = out[a] + c if a in out else c
        return Element(out)

    def antipode_convolution(self, x: Element, side: str) -> Element:
        """``m(S (x) id)Delta(x)`` for side "left", ``m(id (x) S)Delta(x)`` for "right"."""
        total = Element()
        for (a, b), c in self.coproduct(x).terms.items():
            A, B = Element.word(a, c), Element.word(b)
            total = total + (self.antipode(A) * B if side == "left" else A * self.antipode(B))
        return total

    def reduce_tensor(self, t: TensorElement, ctx: Optional[SerreContext] = None) -> TensorElement:
        """Canonical form in each tensor factor (projection along I (x) U + U (x) I)."""
        alg = self.alg
        ctx = ctx or alg.serre_context()
        by_right: Dict[Word, Dict[Word, Scalar]] = {}
        for (a, b), c in t.terms.items():
            by_right.setdefault(b, {})[a] = c
        stage: Dict[Word, Dict[Word, Scalar]] = {}
        for b, part in by_right.items():
            for a, c in alg.canonical(Element(part), ctx).terms.items():
                slot = stage.setdefault(a, {})
                slot[b] = slot[b] + c if b in slot else c
        out: Dict[Tuple[Word, Word], Scalar] = {}
        for a, part in stage.items():
            for b, c in alg.canonical(Element(part), ctx).terms.items():
                out[(a, b)] = c
        return TensorElement(out)

    # axiom checks --------------------------------------------------------
    def check_coassociative(self, x: Element) -> bool:
        t = self.coproduct(x)
        return self.apply_left(t) == self.apply_right(t)

    def check_counit(self, x: Element) -> bool:
        t = self.coproduct(x)
        return self.counit_left(t) == x and self.counit_right(t) == x

    def check_antipode(self, x: Element, ctx: Optional[SerreContext] = None) -> bool:
        alg = self.alg
        unit = Element.scalar(self.counit(x))
        return all(alg.canonical(self.antipode_convolution(x, side) - unit, ctx).is_zero()
                   for side in ("left", "right"))

    def check_relation(self, rel: Element, ctx: Optional[SerreContext] = None) -> TensorElement:
        """Factorwise canonical form of ``Delta(rel)``; zero when Delta respects ``rel``."""
        return self.reduce_tensor(self.coproduct(rel), ctx)


def _acc(out: Triple, key, v: Scalar) -> None:
    prev = out.get(key)
    out[key] = v if prev is None else prev + v


def _clean(t: Triple) -> Triple:
    return {k: v for k, v in t.items() if not v.is_zero()}


def generator_letters(alg: UrsAlgebra, torus: bool = True) -> List[Gen]:
    """``e_i, f_i`` and, optionally, ``w_i^{+-1}, w'_i^{+-1}`` for each node."""
    out: List[Gen] = []
    for i in alg.datum.nodes:
        out += [E(i), F(i)]
        if torus:
            a = alg.alpha(i)
            na = tuple(-k for k in a)
            out += [W(a), W(na), WP(a), WP(na)]
    return out


def words_upto(letters: List[Gen], n: int) -> List[Word]:
    out: List[Word] = []
    for k in range(n + 1):
        for combo in product(letters, repeat=k):
            out.append(make_word(combo))
    return out
