"""Kashiwara skew derivations on the positive part and operator identities.

``d_i`` and ``d'_i`` act on e-words by peeling the leftmost letter::

    d_i (e_j P) = r^-<j,i> s^<i,j>  e_j d_i(P)  + delta_ij P
    d'_i(e_j P) = r^<i,j>  s^-<j,i> e_j d'_i(P) + delta_ij P

with ``d_i(1) = d'_i(1) = 0``.  Operator words are written outermost first, so
``("d", 1), ("d", 2)`` means ``d_1 d_2`` and ``d_2`` acts first.
"""

from __future__ import annotations

from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .cartan import Weight, height
from .freealg import E, Element, Word
from .report import CaseResult, check
from .scalars import ONE, ZERO, Scalar, qbinom, qnumber
from .urs import SerreContext, UrsAlgebra, e_words, split_normal, weights_of_height

Symbol = Tuple[str, int]  # ("d" | "dp" | "E", node)
FLAVORS = {"unprimed": "d", "primed": "dp"}


class KashiwaraError(ValueError):
    pass


class SkewDerivations:
    def __init__(self, alg: UrsAlgebra):
        self.alg = alg
        self._memo: Dict[Tuple[str, int, Word], Dict[Word, Scalar]] = {}
        self._factor: Dict[Tuple[str, int, int], Scalar] = {}

    def factor(self, flavor: str, i: int, j: int) -> Scalar:
        key = (flavor, i, j)
        hit = self._factor.get(key)
        if hit is None:
            eb = self.alg.datum.euler_basis
            if flavor == "d":
                hit = self.alg.rs_power(-eb(j, i), eb(i, j))
            else:
                hit = self.alg.rs_power(eb(i, j), -eb(j, i))
            self._factor[key] = hit
        return hit

    def _word(self, flavor: str, i: int, word: Word) -> Dict[Word, Scalar]:
        key = (flavor, i, word)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        out: Dict[Word, Scalar] = {}
        if word:
            head, tail = word[0], word[1:]
            k = self.factor(flavor, i, head.arg)
            for w, c in self._word(flavor, i, tail).items():
                out[(head,) + w] = k * c
            if head.arg == i:
                out[tail] = out[tail] + ONE if tail in out else ONE
            out = {w: c for w, c in out.items() if not c.is_zero()}
        self._memo[key] = out
        return out

    def _apply(self, flavor: str, i: int, x: Element) -> Element:
        self.alg._check(i)
        out: Dict[Word, Scalar] = {}
        for word, c in x.terms.items():
            if any(g.kind != "E" for g in word):
                raise KashiwaraError("skew derivations act on the e-subalgebra only")
            for w, d in self._word(flavor, i, word).items():
                v = c * d
                out[w] = out[w] + v if w in out else v
        return Element(out)

    def d(self, i: int, x: Element) -> Element:
        return self._apply("d", i, x)

    def dp(self, i: int, x: Element) -> Element:
        return self._apply("dp", i, x)

    def apply_symbols(self, symbols: Sequence[Symbol], x: Element) -> Element:
        for kind, i in reversed(symbols):
            if kind == "E":
                x = self.alg.e(i) * x
            elif kind in ("d", "dp"):
                x = self._apply(kind, i, x)
            else:
                raise KashiwaraError(f"unknown operator symbol {kind!r}")
        return x

    def commutator_extract(self, P: Element, i: int) -> Tuple[Element, Element]:
        """``(L, R)`` with ``[P, f_i] = (w_i L - w'_i R)/(r_i - s_i)``, read off after straightening."""
        alg = self.alg
        nf = alg.straighten(P * alg.f(i) - alg.f(i) * P)
        ai = alg.alpha(i)
        scale = alg.ri(i) - alg.si(i)
        L: Dict[Word, Scalar] = {}
        R: Dict[Word, Scalar] = {}
        for word, c in nf.terms.items():
            fw, mu, nu, ew = split_normal(word)
            if not fw and mu == ai and nu is None:
                L[ew] = c * scale
            elif not fw and mu is None and nu == ai:
                R[ew] = -c * scale
            else:
                raise KashiwaraError(f"commutator has a term outside the two-column shape: {word}")
        return Element(L), Element(R)


class OperatorExpr:
    """Linear combination of operator words over the symbols d_i, d'_i, E_i."""

    def __init__(self, terms: Optional[Dict[Tuple[Symbol, ...], Scalar]] = None):
        self.terms = {k: c for k, c in (terms or {}).items() if not c.is_zero()}

    @classmethod
    def word(cls, symbols: Iterable[Symbol], coeff=ONE) -> "OperatorExpr":
        return cls({tuple(symbols): Scalar.coerce(coeff)})

    def __add__(self, other: "OperatorExpr") -> "OperatorExpr":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return OperatorExpr(out)

    def __neg__(self) -> "OperatorExpr":
        return OperatorExpr({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "OperatorExpr") -> "OperatorExpr":
        return self + (-other)

    def scale(self, c) -> "OperatorExpr":
        c = Scalar.coerce(c)
        return OperatorExpr({k: v * c for k, v in self.terms.items()})

    def __mul__(self, other: "OperatorExpr") -> "OperatorExpr":
        out: Dict[Tuple[Symbol, ...], Scalar] = {}
        for a, c in self.terms.items():
            for b, d in other.terms.items():
                k = a + b
                out[k] = out[k] + c * d if k in out else c * d
        return OperatorExpr(out)

    def is_zero(self) -> bool:
        return not self.terms

    def apply(self, ops: SkewDerivations, x: Element) -> Element:
        total = Element()
        for symbols, c in self.terms.items():
            total = total + ops.apply_symbols(symbols, x).scale(c)
        return total

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        names = {"d": "d", "dp": "d'", "E": "E"}
        parts = []
        for symbols, c in sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0])):
            body = " ".join(f"{names[k]}{i}" for k, i in symbols) or "id"
            parts.append(f"({c}) {body}")
        return " + ".join(parts)


def _power(kind: str, i: int, n: int) -> Tuple[Symbol, ...]:
    return ((kind, i),) * n


def serre_operator(alg: UrsAlgebra, flavor: str, i: int, j: int, orientation: str = "homomorphic") -> OperatorExpr:
    """Operator sum ``sum_k (-1)^k [m k] c^(k)_ij  X``.

    ``X = D_i^{m-k} D_j D_i^k`` for orientation "homomorphic" (the image of the
    plus-Serre element under ``e_i -> D_i``) and ``X = D_i^k D_j D_i^{m-k}`` for
    "reversed", where ``D`` is d or d'.  Only the first vanishes on U^+.
    """
    kind = FLAVORS[flavor]
    if i == j:
        raise KashiwaraError("Serre operator needs i != j")
    m = 1 - alg.datum.a(i, j)
    v = alg.v(i)
    out = OperatorExpr()
    for k in range(m + 1):
        c = qbinom(m, k, v) * alg.c(i, j, k)
        if k % 2:
            c = -c
        if orientation == "reversed":
            sym = _power(kind, i, k) + ((kind, j),) + _power(kind, i, m - k)
        elif orientation == "homomorphic":
            sym = _power(kind, i, m - k) + ((kind, j),) + _power(kind, i, k)
        else:
            raise KashiwaraError(f"unknown orientation {orientation!r}")
        out = out + OperatorExpr.word(sym, c)
    return out


def s2_s3_operators(alg: UrsAlgebra, i: int, j: int) -> Tuple[OperatorExpr, OperatorExpr]:
    """The two correction sums of the inductive step (i-branch), as operators."""
    eb = alg.datum.euler_basis
    m = 1 - alg.datum.a(i, j)
    v = alg.v(i)
    vinv = v.inverse()
    pre = alg.rs_power(-eb(i, j), eb(j, i))
    S2 = OperatorExpr()
    for k in range(m):
        c = qbinom(m, k, v) * qnumber(m - k, vinv) * alg.c(i, j, k) * pre * vinv ** k
        if k % 2:
            c = -c
        S2 = S2 + OperatorExpr.word(_power("d", i, m - k - 1) + (("d", j),) + _power("d", i, k), c)
    S3 = OperatorExpr()
    for k in range(1, m + 1):
        c = qbinom(m, k, v) * qnumber(k, vinv) * alg.c(i, j, k)
        if k % 2:
            c = -c
        S3 = S3 + OperatorExpr.word(_power("d", i, m - k) + (("d", j),) + _power("d", i, k - 1), c)
    return S2, S3


def alternating_sum(m: int, v: Scalar) -> Scalar:
    """``sum_k (-1)^k [m k]_v v^(k(k-1)/2)``."""
    total = ZERO
    for k in range(m + 1):
        term = qbinom(m, k, v) * v ** (k * (k - 1) // 2)
        total = total - term if k % 2 else total + term
    return total


def s4_sum(alg: UrsAlgebra, i: int, j: int) -> Tuple[Scalar, Scalar]:
    """The S_4 scalar sum with its c^(k) factors, and the same sum in closed form."""
    eb = alg.datum.euler_basis
    m = 1 - alg.datum.a(i, j)
    v = alg.v(i)
    lhs = ZERO
    for k in range(m + 1):
        term = qbinom(m, k, v) * alg.c(i, j, k) * alg.rs_power(-k * eb(j, i), k * eb(i, j))
        lhs = lhs - term if k % 2 else lhs + term
    return lhs, alternating_sum(m, v)


def probe_words(alg: UrsAlgebra, max_height: int) -> List[Word]:
    out: List[Word] = []
    for h in range(max_height + 1):
        for beta in weights_of_height(alg.rank, h):
            out.extend(e_words(beta))
    return out


# ---------------------------------------------------------------------------
# verifiers


def verify_power_rule(ops: SkewDerivations, i: int, m: int) -> List[CaseResult]:
    alg = ops.alg
    x = alg.e_word([i] * m)
    lower = alg.e_word([i] * (m - 1))
    v = alg.v(i)
    out = []
    for flavor, base in (("d", v.inverse()), ("dp", v)):
        got = ops._apply(flavor, i, x)
        want = lower.scale(qnumber(m, base))
        out.append(check(f"{flavor}_{i}(e{i}^{m})", {"i": i, "m": m, "flavor": flavor},
                         got == want, got - want))
    return out


def verify_commutation(ops: SkewDerivations, i: int, j: int, m: int, probes: Sequence[Word]) -> List[CaseResult]:
    alg = ops.alg
    eb = alg.datum.euler_basis
    out = []
    first_l = OperatorExpr.word([("d", i), ("dp", j)])
    first_r = OperatorExpr.word([("dp", j), ("d", i)], alg.rs_power(eb(j, i), -eb(i, j)))
    second_l = OperatorExpr.word(_power("d", i, m) + (("E", j),))
    second_r = OperatorExpr.word((("E", j),) + _power("d", i, m), alg.rs_power(-m * eb(j, i), m * eb(i, j)))
    third_l = OperatorExpr.word(_power("dp", i, m) + (("E", j),))
    third_r = OperatorExpr.word((("E", j),) + _power("dp", i, m), alg.rs_power(m * eb(i, j), -m * eb(j, i)))
    if i == j:
        v = alg.v(i)
        second_r = second_r + OperatorExpr.word(_power("d", i, m - 1), qnumber(m, v.inverse()))
        third_r = third_r + OperatorExpr.word(_power("dp", i, m - 1), qnumber(m, v))
    identities = [("d d'", first_l - first_r),
                  ("d^m E", second_l - second_r),
                  ("d'^m E", third_l - third_r)]
    for label, op in identities:
        bad = None
        for w in probes:
            res = op.apply(ops, Element.word(w))
            if not res.is_zero():
                bad = (w, res)
                break
        out.append(check(f"commutation {label} i={i} j={j} m={m}", {"i": i, "j": j, "m": m, "probes": len(probes)},
                         bad is None, None if bad is None else f"probe {Element.word(bad[0])}: {bad[1]}"))
    return out


def verify_operator_serre(ops: SkewDerivations, flavor: str, i: int, j: int, probes: Sequence[Word],
                 ctx: SerreContext, orientation: str = "homomorphic") -> CaseResult:
    alg = ops.alg
    op = serre_operator(alg, flavor, i, j, orientation)
    bad = None
    free_zero = 0
    for w in probes:
        res = op.apply(ops, Element.word(w))
        if res.is_zero():
            free_zero += 1
            continue
        if not ctx.reduce_plus(res).is_zero():
            bad = (w, res)
            break
    return check(f"operator Serre identity {flavor} ({i},{j}) [{orientation}]",
                 {"flavor": flavor, "i": i, "j": j, "orientation": orientation, "probes": len(probes)},
                 bad is None, None if bad is None else f"probe {Element.word(bad[0])}: {ctx.reduce_plus(bad[1])}",
                 free_layer_zero=free_zero)


def verify_descent(ops: SkewDerivations, ctx: SerreContext) -> List[CaseResult]:
    """Derivatives of every plus-Serre element lie in the Serre ideal."""
    alg = ops.alg
    out = []
    for j, k in alg.serre_pairs():
        S = alg.serre_element("plus", j, k)
        for i in alg.datum.nodes:
            for flavor in ("d", "dp"):
                res = ctx.reduce_plus(ops._apply(flavor, i, S))
                out.append(check(f"descent {flavor}_{i} S({j},{k})", {"i": i, "j": j, "k": k, "flavor": flavor},
                                 res.is_zero(), res))
    return out


def verify_commutator_extraction(ops: SkewDerivations, probes: Sequence[Word], ctx: SerreContext) -> List[CaseResult]:
    alg = ops.alg
    out = []
    for i in alg.datum.nodes:
        bad = None
        for w in probes:
            P = Element.word(w)
            L, R = ops.commutator_extract(P, i)
            dl = ctx.reduce_plus(L - ops.d(i, P))
            dr = ctx.reduce_plus(R - ops.dp(i, P))
            if not (dl.is_zero() and dr.is_zero()):
                bad = (P, dl, dr)
                break
        out.append(check(f"commutator extraction = (d_{i}, d'_{i})", {"i": i, "probes": len(probes)},
                         bad is None, None if bad is None else f"probe {bad[0]}: {bad[1]} | {bad[2]}"))
    return out


def verify_cancellations(ops: SkewDerivations, i: int, j: int, probes: Sequence[Word], max_m: int = 6) -> List[CaseResult]:
    alg = ops.alg
    out = []
    v = alg.v(i)
    for m in range(1, max_m + 1):
        val = alternating_sum(m, v)
        out.append(check(f"alternating q-binomial sum m={m} (node {i})", {"m": m, "i": i},
                         val.is_zero(), val))
    lhs, rhs = s4_sum(alg, i, j)
    out.append(check(f"S4 scalar ({i},{j})", {"i": i, "j": j}, lhs == rhs and rhs.is_zero(), lhs))
    S2, S3 = s2_s3_operators(alg, i, j)
    total = S2 + S3
    bad = None
    for w in probes:
        res = total.apply(ops, Element.word(w))
        if not res.is_zero():
            bad = (w, res)
            break
    out.append(check(f"S2 + S3 = 0 ({i},{j})", {"i": i, "j": j, "probes": len(probes)},
                     bad is None and total.is_zero(),
                     None if bad is None else f"probe {Element.word(bad[0])}: {bad[1]}",
                     cancels_as_expression=total.is_zero()))
    return out
