"""The two-parameter quantum group U_{r,s}(g) as a presented algebra.

Elements of the full algebra are brought to triangular order
``f-word * w_mu * w'_nu * e-word`` by a memoized rewriting system for the
torus and cross relations.  The Serre ideals of the positive and negative
parts are handled per weight by exact row reduction, which yields canonical
representatives in each graded piece.
"""

from __future__ import annotations

import threading
from itertools import permutations
from typing import Dict, Iterable, Iterator, List, Optional, Tuple

from .cartan import (CartanDatum, CartanError, Weight, c_coeff, conjugation_exponents,
                     height, is_nonneg, w_add, w_neg, w_sub)
from .freealg import (E, F, W, WP, Element, Gen, Word, _collapse, apply_map, concat,
                      word_weight)
from .scalars import ONE, ZERO, Scalar, qbinom, var

MAX_HEIGHT_LIMIT = 7
STRATEGIES = ("leftmost", "rightmost")

_ORDER = {"F": 0, "W": 1, "WP": 2, "E": 3}


class HeightBoundError(ValueError):
    pass


class NormalElement(Element):
    """Element whose words are all in triangular order."""

    __slots__ = ()

    def parts(self) -> Iterator[Tuple[Word, Optional[Weight], Optional[Weight], Word, Scalar]]:
        for word, c in self.terms.items():
            fw, mu, nu, ew = split_normal(word)
            yield fw, mu, nu, ew, c


def split_normal(word: Word) -> Tuple[Word, Optional[Weight], Optional[Weight], Word]:
    """Split a triangular word into its f-part, torus weights and e-part."""
    k = 0
    n = len(word)
    while k < n and word[k].kind == "F":
        k += 1
    fw = word[:k]
    mu = nu = None
    if k < n and word[k].kind == "W":
        mu = word[k].arg
        k += 1
    if k < n and word[k].kind == "WP":
        nu = word[k].arg
        k += 1
    ew = word[k:]
    if any(g.kind != "E" for g in ew):
        raise ValueError("word is not in triangular order")
    return fw, mu, nu, ew


def is_normal_word(word: Word) -> bool:
    return all(_ORDER[a.kind] <= _ORDER[b.kind] for a, b in zip(word, word[1:]))


class UrsAlgebra:
    """U_{r,s}(g) for a Cartan datum; ``r`` and ``s`` may be any nonzero scalars.

    By default they are the independent parameters ``r`` and ``s``.
    """

    def __init__(self, datum: CartanDatum, r: Optional[Scalar] = None, s: Optional[Scalar] = None):
        self.datum = datum
        self.r = var("r") if r is None else Scalar.coerce(r)
        self.s = var("s") if s is None else Scalar.coerce(s)
        if self.r.is_zero() or self.s.is_zero():
            raise ValueError("parameters must be nonzero")
        self.rank = datum.rank
        self._ri = [self.r ** d for d in datum.d]
        self._si = [self.s ** d for d in datum.d]
        for i in datum.nodes:
            ri, si = self.ri(i), self.si(i)
            if ri == si or ri == -si:
                raise ValueError(f"degenerate parameters: r_{i} = +-s_{i}")
        self._inv_diff = [(ri - si).inverse() for ri, si in zip(self._ri, self._si)]
        self._conj_cache: Dict[tuple, Scalar] = {}
        self._memo: Dict[str, Dict[Word, Dict[Word, Scalar]]] = {k: {} for k in STRATEGIES}
        self._contexts: Dict[int, "SerreContext"] = {}

    # parameters ----------------------------------------------------------
    def ri(self, i: int) -> Scalar:
        return self._ri[i - 1]

    def si(self, i: int) -> Scalar:
        return self._si[i - 1]

    def v(self, i: int) -> Scalar:
        """``r_i s_i^-1``, the base of the Serre q-binomials."""
        return self.ri(i) / self.si(i)

    def is_generic(self) -> bool:
        return self.r == var("r") and self.s == var("s")

    def rs_power(self, a: int, b: int) -> Scalar:
        return self.r ** a * self.s ** b

    def conj(self, kind: str, j: int, mu: Weight) -> Scalar:
        key = (kind, j, mu)
        hit = self._conj_cache.get(key)
        if hit is None:
            a, b = conjugation_exponents(self.datum, kind, j, mu)
            hit = self._conj_cache[key] = self.rs_power(a, b)
        return hit

    def c(self, i: int, j: int, k: int) -> Scalar:
        return c_coeff(self.datum, i, j, k, self.r, self.s)

    def alpha(self, i: int) -> Weight:
        return self.datum.simple_root(i)

    def weight(self, x: Element) -> Weight:
        return x.weight(self.rank)

    # generators ----------------------------------------------------------
    def _check(self, i: int) -> int:
        if not 1 <= i <= self.rank:
            raise CartanError(f"index {i} out of range 1..{self.rank}")
        return i

    def e(self, i: int) -> Element:
        return Element.gen(E(self._check(i)))

    def f(self, i: int) -> Element:
        return Element.gen(F(self._check(i)))

    def w(self, i: int, power: int = 1) -> Element:
        self._check(i)
        return Element.word((W(tuple(power if k == i - 1 else 0 for k in range(self.rank))),))

    def wp(self, i: int, power: int = 1) -> Element:
        self._check(i)
        return Element.word((WP(tuple(power if k == i - 1 else 0 for k in range(self.rank))),))

    def w_mu(self, mu: Weight) -> Element:
        return Element.word((W(tuple(mu)),))

    def wp_mu(self, mu: Weight) -> Element:
        return Element.word((WP(tuple(mu)),))

    def e_word(self, indices: Iterable[int]) -> Element:
        return Element.word(tuple(E(self._check(i)) for i in indices))

    def f_word(self, indices: Iterable[int]) -> Element:
        return Element.word(tuple(F(self._check(i)) for i in indices))

    # Serre elements ------------------------------------------------------
    def serre_element(self, sign: str, i: int, j: int) -> Element:
        """Left-hand side of the quantum Serre relation for the pair ``(i, j)``."""
        self._check(i)
        self._check(j)
        if i == j:
            raise CartanError("Serre elements need i != j")
        if sign not in ("plus", "minus"):
            raise ValueError("sign must be 'plus' or 'minus'")
        m = 1 - self.datum.a(i, j)
        v = self.v(i)
        terms: Dict[Word, Scalar] = {}
        for k in range(m + 1):
            coeff = qbinom(m, k, v) * self.c(i, j, k)
            if k % 2:
                coeff = -coeff
            if sign == "plus":
                word = (E(i),) * (m - k) + (E(j),) + (E(i),) * k
            else:
                word = (F(i),) * k + (F(j),) + (F(i),) * (m - k)
            terms[word] = coeff
        return Element(terms)

    def serre_pairs(self) -> List[Tuple[int, int]]:
        return [(i, j) for i in self.datum.nodes for j in self.datum.nodes if i != j]

    # straightening -------------------------------------------------------
    def _rewrite(self, a: Gen, b: Gen) -> List[Tuple[Scalar, Word]]:
        ka, kb = a.kind, b.kind
        if ka == "E" and kb == "F":
            out = [(ONE, (b, a))]
            if a.arg == b.arg:
                c = self._inv_diff[a.arg - 1]
                alpha = self.alpha(a.arg)
                out.append((c, (W(alpha),)))
                out.append((-c, (WP(alpha),)))
            return out
        if ka == "E":  # b is a torus letter: e_i w_mu = conj^-1 w_mu e_i
            kind = "e-by-w" if kb == "W" else "e-by-wp"
            return [(self.conj(kind, a.arg, b.arg).inverse(), (b, a))]
        # a is a torus letter and b = F: w_mu f_j = conj f_j w_mu
        kind = "f-by-w" if ka == "W" else "f-by-wp"
        return [(self.conj(kind, b.arg, a.arg), (b, a))]

    @staticmethod
    def _redexes(word: Word) -> List[int]:
        return [p for p in range(len(word) - 1) if _ORDER[word[p].kind] > _ORDER[word[p + 1].kind]]

    def _straighten_word(self, word: Word, strategy: str) -> Dict[Word, Scalar]:
        memo = self._memo[strategy]
        hit = memo.get(word)
        if hit is not None:
            return hit
        redexes = self._redexes(word)
        if not redexes:
            result = {word: ONE}
        else:
            pos = redexes[0] if strategy == "leftmost" else redexes[-1]
            result = {}
            for coeff, repl in self._rewrite(word[pos], word[pos + 1]):
                new = _collapse(word[:pos] + repl + word[pos + 2:])
                for w, c in self._straighten_word(new, strategy).items():
                    v = coeff * c
                    prev = result.get(w)
                    result[w] = v if prev is None else prev + v
            result = {w: c for w, c in result.items() if not c.is_zero()}
        memo[word] = result
        return result

    def straighten(self, x: Element, strategy: str = "leftmost") -> NormalElement:
        """Rewrite ``x`` into triangular order ``f... w_mu w'_nu e...``.

        ``strategy`` picks which out-of-order adjacent pair is rewritten first.
        """
        if strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy {strategy!r}")
        out: Dict[Word, Scalar] = {}
        for word, c in x.terms.items():
            for w, d in self._straighten_word(word, strategy).items():
                v = c * d
                prev = out.get(w)
                out[w] = v if prev is None else prev + v
        return NormalElement(out)

    # Serre reduction -----------------------------------------------------
    def serre_context(self, max_height: int = 5) -> "SerreContext":
        if max_height > MAX_HEIGHT_LIMIT:
            raise HeightBoundError(f"height bound exceeds maximum {MAX_HEIGHT_LIMIT}")
        ctx = self._contexts.get(max_height)
        if ctx is None:
            ctx = self._contexts[max_height] = SerreContext(self, max_height)
        return ctx

    def reduce_plus(self, x: Element, ctx: Optional["SerreContext"] = None) -> Element:
        ctx = ctx or self.serre_context()
        return ctx.reduce_plus(x)

    def reduce_minus(self, x: Element, ctx: Optional["SerreContext"] = None) -> Element:
        ctx = ctx or self.serre_context()
        return ctx.reduce_minus(x)

    def is_zero_in_uplus(self, x: Element, ctx: Optional["SerreContext"] = None) -> bool:
        return self.reduce_plus(x, ctx).is_zero()

    def dim_plus(self, beta: Weight, ctx: Optional["SerreContext"] = None) -> int:
        ctx = ctx or self.serre_context()
        return ctx.dim_plus(beta)

    def canonical(self, x: Element, ctx: Optional["SerreContext"] = None,
                  strategy: str = "leftmost") -> NormalElement:
        """Straighten, then reduce the e-part and f-part modulo the Serre ideals.

        Two elements are equal in U_{r,s} exactly when their canonical forms agree.
        """
        ctx = ctx or self.serre_context()
        nf = self.straighten(x, strategy)
        by_head: Dict[tuple, Dict[Word, Scalar]] = {}
        for word, c in nf.terms.items():
            fw, mu, nu, ew = split_normal(word)
            by_head.setdefault((fw, mu, nu), {})[ew] = c
        stage: Dict[tuple, Dict[Word, Scalar]] = {}
        for (fw, mu, nu), part in by_head.items():
            reduced = ctx.reduce_plus(Element(part, True))
            for ew, c in reduced.terms.items():
                slot = stage.setdefault((mu, nu, ew), {})
                slot[fw] = slot[fw] + c if fw in slot else c
        out: Dict[Word, Scalar] = {}
        for (mu, nu, ew), part in stage.items():
            reduced = ctx.reduce_minus(Element(part))
            torus = ((W(mu),) if mu else ()) + ((WP(nu),) if nu else ())
            for fw, c in reduced.terms.items():
                w = fw + torus + ew
                out[w] = out[w] + c if w in out else c
        return NormalElement(out)

    def equal(self, x: Element, y: Element, ctx: Optional["SerreContext"] = None) -> bool:
        return self.canonical(x - y, ctx).is_zero()

    # automorphisms -------------------------------------------------------
    def phi(self, x: Element) -> Element:
        """The Q-algebra automorphism with ``r -> s^-1``, ``s -> r^-1``, ``e_i -> f_i``,
        ``f_i -> r_i s_i e_i`` and ``w_i <-> w'_i``."""
        if not self.is_generic():
            raise ValueError("phi moves the parameters and needs generic r, s")

        def image(g: Gen) -> Element:
            if g.kind == "E":
                return Element.gen(F(g.arg))
            if g.kind == "F":
                return Element.gen(E(g.arg)).scale(self.ri(g.arg) * self.si(g.arg))
            if g.kind == "W":
                return Element.gen(WP(g.arg))
            return Element.gen(W(g.arg))

        action = {"r": {"s": -1}, "s": {"r": -1}, "rp": {"rp": 1}, "q": {"q": 1}}
        return apply_map(image, x, "homomorphism", action)

    def psi(self, x: Element) -> Element:
        """The anti-automorphism swapping ``e_i`` and ``f_i`` and fixing the torus."""
        return psi(x)

    # relations -----------------------------------------------------------
    def relations(self) -> List[Tuple[str, Element]]:
        """Every defining relation written as ``lhs - rhs``."""
        out: List[Tuple[str, Element]] = []
        nodes = list(self.datum.nodes)
        one = Element.scalar(1)
        for i in nodes:
            out.append((f"torus w{i}*w{i}^-1", self.w(i) * self.w(i, -1) - one))
            out.append((f"torus wp{i}*wp{i}^-1", self.wp(i) * self.wp(i, -1) - one))
            for j in nodes:
                out.append((f"torus w{i}*wp{j}", self.w(i) * self.wp(j) - self.wp(j) * self.w(i)))
                if i < j:
                    out.append((f"torus w{i}*w{j}", self.w(i) * self.w(j) - self.w(j) * self.w(i)))
                    out.append((f"torus wp{i}*wp{j}", self.wp(i) * self.wp(j) - self.wp(j) * self.wp(i)))
        for i in nodes:
            ai = self.alpha(i)
            for j in nodes:
                out.append((f"conj-e w{i} e{j}", self.w(i) * self.e(j) * self.w(i, -1)
                            - self.e(j).scale(self.conj("e-by-w", j, ai))))
                out.append((f"conj-e wp{i} e{j}", self.wp(i) * self.e(j) * self.wp(i, -1)
                            - self.e(j).scale(self.conj("e-by-wp", j, ai))))
                out.append((f"conj-f w{i} f{j}", self.w(i) * self.f(j) * self.w(i, -1)
                            - self.f(j).scale(self.conj("f-by-w", j, ai))))
                out.append((f"conj-f wp{i} f{j}", self.wp(i) * self.f(j) * self.wp(i, -1)
                            - self.f(j).scale(self.conj("f-by-wp", j, ai))))
        for i in nodes:
            for j in nodes:
                rel = self.e(i) * self.f(j) - self.f(j) * self.e(i)
                if i == j:
                    rel = rel - (self.w(i) - self.wp(i)).scale(self._inv_diff[i - 1])
                out.append((f"commutator e{i} f{j}", rel))
        for i, j in self.serre_pairs():
            out.append((f"serre+ ({i},{j})", self.serre_element("plus", i, j)))
        for i, j in self.serre_pairs():
            out.append((f"serre- ({i},{j})", self.serre_element("minus", i, j)))
        return out

    def __repr__(self) -> str:
        return f"UrsAlgebra({self.datum.name}, r={self.r}, s={self.s})"


def psi(x: Element) -> Element:
    def image(g: Gen) -> Element:
        if g.kind == "E":
            return Element.gen(F(g.arg))
        if g.kind == "F":
            return Element.gen(E(g.arg))
        return Element.gen(g)

    return apply_map(image, x, "anti-homomorphism")


# ---------------------------------------------------------------------------
# graded pieces of the positive part


def e_words(beta: Weight) -> List[Word]:
    """All e-words of weight ``beta`` in increasing lexicographic order."""
    letters = []
    for i, k in enumerate(beta, start=1):
        if k < 0:
            return []
        letters.extend([i] * k)
    return sorted({tuple(E(i) for i in p) for p in permutations(letters)}) if letters else [()]


def weights_of_height(rank: int, h: int) -> List[Weight]:
    out = []

    def rec(prefix, left, slots):
        if slots == 1:
            out.append(tuple(prefix + [left]))
            return
        for k in range(left, -1, -1):
            rec(prefix + [k], left - k, slots - 1)

    rec([], h, rank)
    return sorted(out)


class SerreContext:
    """Per-weight echelon bases of the plus-Serre ideal, up to a height bound.

    Pivots are the lexicographically largest words (``e_1 < e_2 < ...``);
    reduced representatives are combinations of non-pivot words.
    """

    def __init__(self, alg: UrsAlgebra, max_height: int):
        if max_height > MAX_HEIGHT_LIMIT:
            raise HeightBoundError(f"height bound exceeds maximum {MAX_HEIGHT_LIMIT}")
        self.alg = alg
        self.max_height = max_height
        self._echelon: Dict[Weight, Dict[Word, Dict[Word, Scalar]]] = {}
        self._lock = threading.RLock()
        self._serre_by_weight: Dict[Weight, List[Element]] = {}
        for i, j in alg.serre_pairs():
            S = alg.serre_element("plus", i, j)
            self._serre_by_weight.setdefault(alg.weight(S), []).append(S)

    def _check_height(self, beta: Weight):
        if not is_nonneg(beta):
            raise ValueError(f"weight {beta} is not in the positive cone")
        if height(beta) > self.max_height:
            raise HeightBoundError(
                f"weight of height {height(beta)} exceeds the configured bound {self.max_height}")

    def echelon(self, beta: Weight) -> Dict[Word, Dict[Word, Scalar]]:
        """Reduced row echelon basis of the ideal's weight-``beta`` piece, keyed by pivot."""
        beta = tuple(beta)
        self._check_height(beta)
        hit = self._echelon.get(beta)
        if hit is not None:
            return hit
        with self._lock:
            hit = self._echelon.get(beta)
            if hit is None:
                hit = self._build(beta)
                self._echelon[beta] = hit
        return hit

    def _build(self, beta: Weight) -> Dict[Word, Dict[Word, Scalar]]:
        pivots: Dict[Word, Dict[Word, Scalar]] = {}
        if height(beta) < 2:
            return pivots
        alg = self.alg
        for S in self._serre_by_weight.get(beta, []):
            _insert_row(pivots, dict(S.terms))
        for i in alg.datum.nodes:
            if beta[i - 1] == 0:
                continue
            lower = w_sub(beta, alg.alpha(i))
            ei = (E(i),)
            for row in list(self.echelon(lower).values()):
                _insert_row(pivots, {ei + w: c for w, c in row.items()})
                _insert_row(pivots, {w + ei: c for w, c in row.items()})
        return pivots

    def ideal_rank(self, beta: Weight) -> int:
        return len(self.echelon(beta))

    def dim_plus(self, beta: Weight) -> int:
        beta = tuple(beta)
        self._check_height(beta)
        return len(e_words(beta)) - self.ideal_rank(beta)

    def complement(self, beta: Weight) -> List[Word]:
        piv = self.echelon(beta)
        return [w for w in e_words(beta) if w not in piv]

    def reduce_plus(self, x: Element) -> Element:
        if not x.terms:
            return x
        for word in x.terms:
            for g in word:
                if g.kind != "E":
                    raise ValueError("reduce_plus expects an element of the e-subalgebra")
        out: Dict[Word, Scalar] = {}
        for beta, part in x.graded_components(self.alg.rank).items():
            piv = self.echelon(beta)
            row = dict(part.terms)
            for pw, prow in piv.items():
                c = row.get(pw)
                if c is not None:
                    _axpy(row, -c, prow)
            out.update(row)
        return Element(out)

    def reduce_minus(self, y: Element) -> Element:
        for word in y.terms:
            for g in word:
                if g.kind != "F":
                    raise ValueError("reduce_minus expects an element of the f-subalgebra")
        return psi(self.reduce_plus(psi(y)))


def _axpy(row: Dict[Word, Scalar], a: Scalar, other: Dict[Word, Scalar]) -> None:
    for w, c in other.items():
        v = a * c
        prev = row.get(w)
        if prev is not None:
            v = prev + v
        if v.is_zero():
            row.pop(w, None)
        else:
            row[w] = v


def _insert_row(pivots: Dict[Word, Dict[Word, Scalar]], row: Dict[Word, Scalar]) -> bool:
    row = {w: c for w, c in row.items() if not c.is_zero()}
    for pw, prow in pivots.items():
        c = row.get(pw)
        if c is not None:
            _axpy(row, -c, prow)
    if not row:
        return False
    lead = max(row)
    inv = row[lead].inverse()
    row = {w: c * inv for w, c in row.items()}
    for pw, prow in pivots.items():
        c = prow.get(lead)
        if c is not None:
            _axpy(prow, -c, row)
    pivots[lead] = row
    return True
