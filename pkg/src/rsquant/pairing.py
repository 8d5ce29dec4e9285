"""Skew Hopf pairing between the Borel halves U^{<=0} and U^{>=0}.

Values are computed on words by peeling one letter at a time:

* ``(y1 y', x) = sum (y1, x_(1)) (y', x_(2))`` over ``Delta(x)``;
* ``(g, x1 x') = sum (g_(1), x') (g_(2), x1)`` over ``Delta(g)`` for a single letter ``g``;

with tensor pairing ``(a (x) b, c (x) d) = (a, c)(b, d)`` and the letter base cases
``(f_i, e_j) = delta_ij / (s_i - r_i)``, ``(w'_mu, w_nu) = r^<mu,nu> s^-<nu,mu>``,
``(w'_mu, e_i) = (f_i, w_nu) = 0`` and ``(1, x) = eps(x)``.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Tuple

from .cartan import Weight
from .freealg import Element, Gen, Word
from .hopf import HopfMaps
from .scalars import ONE, ZERO, Scalar
from .urs import SerreContext, UrsAlgebra


class BorelError(ValueError):
    pass


_LOWER = ("F", "WP")
_UPPER = ("E", "W")


class PairingEngine:
    def __init__(self, alg: UrsAlgebra, hopf: Optional[HopfMaps] = None):
        self.alg = alg
        self.hopf = hopf or HopfMaps(alg)
        self._memo: Dict[Tuple[Word, Word], Scalar] = {}
        self._neg_inv_diff = [(alg.si(i) - alg.ri(i)).inverse() for i in alg.datum.nodes]

    def clear_cache(self) -> None:
        self._memo.clear()

    # base cases ----------------------------------------------------------
    def letter_pair(self, g: Gen, h: Gen) -> Scalar:
        if g.kind == "F" and h.kind == "E":
            return self._neg_inv_diff[g.arg - 1] if g.arg == h.arg else ZERO
        if g.kind == "WP" and h.kind == "W":
            e = self.alg.datum.euler
            return self.alg.rs_power(e(g.arg, h.arg), -e(h.arg, g.arg))
        return ZERO

    # recursion -----------------------------------------------------------
    def pair_words(self, y: Word, x: Word) -> Scalar:
        key = (y, x)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        if not y:
            val = self.hopf.word_counit(x)
        elif not x:
            val = self.hopf.word_counit(y)
        elif len(y) == 1 and len(x) == 1:
            val = self.letter_pair(y[0], x[0])
        elif len(y) > 1:
            val = self.split_lower(y, x, 1)
        else:
            val = self.split_upper(y, x, 1)
        self._memo[key] = val
        return val

    def split_lower(self, y: Word, x: Word, k: int) -> Scalar:
        """``(y[:k] y[k:], x)`` expanded through ``Delta(x)``."""
        head, tail = y[:k], y[k:]
        total = ZERO
        for (a, b), c in self.hopf.word_coproduct(x).terms.items():
            left = self.pair_words(head, a)
            if left.is_zero():
                continue
            right = self.pair_words(tail, b)
            if not right.is_zero():
                total = total + c * left * right
        return total

    def split_upper(self, y: Word, x: Word, k: int) -> Scalar:
        """``(y, x[:k] x[k:])`` expanded through ``Delta(y)`` against ``x[k:] (x) x[:k]``."""
        head, tail = x[:k], x[k:]
        total = ZERO
        for (a, b), c in self.hopf.word_coproduct(y).terms.items():
            left = self.pair_words(a, tail)
            if left.is_zero():
                continue
            right = self.pair_words(b, head)
            if not right.is_zero():
                total = total + c * left * right
        return total

    # public API ----------------------------------------------------------
    def _prepare(self, x: Element, allowed: Tuple[str, str], label: str) -> Element:
        for word in x.terms:
            for g in word:
                if g.kind not in allowed:
                    raise BorelError(f"{label} argument has letter {g} outside its Borel subalgebra")
        return self.alg.straighten(x)

    def pair(self, y: Element, x: Element) -> Scalar:
        """Bilinear pairing of ``y`` in U^{<=0} with ``x`` in U^{>=0}."""
        y = self._prepare(y, _LOWER, "first")
        x = self._prepare(x, _UPPER, "second")
        total = ZERO
        for wy, cy in y.terms.items():
            for wx, cx in x.terms.items():
                v = self.pair_words(wy, wx)
                if not v.is_zero():
                    total = total + cy * cx * v
        return total

    def gram(self, beta: Weight, ctx: Optional[SerreContext] = None) -> Tuple[List[Word], List[Word], List[List[Scalar]]]:
        """Gram matrix on the weight-``beta`` piece.

        Columns are the reduced e-monomials ``m_b`` of weight ``beta``; row ``a``
        is the mirrored f-word ``Psi(m_a)``.  Returns ``(rows, cols, matrix)``.
        """
        ctx = ctx or self.alg.serre_context()
        cols = ctx.complement(tuple(beta))
        rows = [mirror(w) for w in cols]
        matrix = [[self.pair_words(y, x) for x in cols] for y in rows]
        return rows, cols, matrix


def mirror(word: Word) -> Word:
    """Image of an e-word under the anti-automorphism exchanging e_i and f_i."""
    swap = {"E": "F", "F": "E"}
    return tuple(Gen(swap.get(g.kind, g.kind), g.arg) for g in reversed(word))


def determinant(matrix: List[List[Scalar]]) -> Scalar:
    """Exact determinant by fraction-free elimination over Scalars."""
    n = len(matrix)
    m = [list(row) for row in matrix]
    det = ONE
    for k in range(n):
        piv = next((i for i in range(k, n) if not m[i][k].is_zero()), None)
        if piv is None:
            return ZERO
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            det = -det
        det = det * m[k][k]
        inv = m[k][k].inverse()
        for i in range(k + 1, n):
            f = m[i][k] * inv
            if not f.is_zero():
                m[i] = [a - f * b for a, b in zip(m[i], m[k])]
    return det
