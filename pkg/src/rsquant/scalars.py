"""Exact arithmetic in the rational function field Q(r, s, rp, q).

Elements are stored as a fraction of two Laurent polynomials with integer
coefficients.  The representation is canonical, so equality of two scalars is
plain structural equality:

* the denominator carries no monomial factor (negative powers live in the
  numerator),
* numerator and denominator are coprime as polynomials,
* the integer content of numerator and denominator together is 1,
* the leading coefficient of the denominator, under lexicographic order on the
  exponent vector ``(r, s, rp, q)``, is positive.

Multivariate gcds and exact divisions are delegated to FLINT.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as igcd
from typing import Dict, Iterable, Mapping, Tuple, Union

import flint
from flint.utils.flint_exceptions import DomainError

VARS = ("r", "s", "rp", "q")
NVARS = len(VARS)
_VAR_INDEX = {name: k for k, name in enumerate(VARS)}

Exp = Tuple[int, int, int, int]
Poly = Dict[Exp, int]

ZERO_EXP: Exp = (0,) * NVARS
_ONE: Poly = {ZERO_EXP: 1}


class ScalarError(ArithmeticError):
    pass


class SpecializationError(ScalarError):
    """Raised when an evaluation point makes a denominator vanish."""


# ---------------------------------------------------------------------------
# raw polynomial helpers on {exponent tuple: int}


def _eadd(a: Exp, b: Exp) -> Exp:
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3])


def _esub(a: Exp, b: Exp) -> Exp:
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3])


def _emin(p: Iterable[Exp]) -> Exp:
    it = iter(p)
    m = list(next(it))
    for e in it:
        for k in range(NVARS):
            if e[k] < m[k]:
                m[k] = e[k]
    return tuple(m)


def p_add(a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, 0) + c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def p_sub(a: Poly, b: Poly) -> Poly:
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, 0) - c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def p_neg(a: Poly) -> Poly:
    return {e: -c for e, c in a.items()}


def p_mul(a: Poly, b: Poly) -> Poly:
    if len(a) == 1:
        (ea, ca), = a.items()
        return {_eadd(ea, e): ca * c for e, c in b.items()}
    if len(b) == 1:
        (eb, cb), = b.items()
        return {_eadd(e, eb): c * cb for e, c in a.items()}
    out: Poly = {}
    get = out.get
    for ea, ca in a.items():
        a0, a1, a2, a3 = ea
        for eb, cb in b.items():
            e = (a0 + eb[0], a1 + eb[1], a2 + eb[2], a3 + eb[3])
            out[e] = get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def p_scale(a: Poly, k: int) -> Poly:
    if k == 1:
        return a
    return {e: c * k for e, c in a.items()}


def p_shift(a: Poly, s: Exp) -> Poly:
    if s == ZERO_EXP:
        return a
    return {_eadd(e, s): c for e, c in a.items()}


def p_content(a: Poly) -> int:
    g = 0
    for c in a.values():
        g = igcd(g, c)
        if g == 1:
            break
    return g


def p_is_const(a: Poly) -> bool:
    return len(a) == 1 and ZERO_EXP in a


def p_exact_div(a: Poly, b: Poly) -> Poly:
    """Quotient of an exact polynomial division ``a / b``.

    Raises ``ScalarError`` when ``b`` does not divide ``a``.
    """
    if len(b) == 1:
        (eb, cb), = b.items()
        out = {}
        for e, c in a.items():
            q, rem = divmod(c, cb)
            if rem:
                raise ScalarError("inexact division")
            out[_esub(e, eb)] = q
        return out
    try:
        return _from_flint(_to_flint(a) / _to_flint(b))
    except DomainError:
        raise ScalarError("inexact division") from None


def _vars_of(a: Poly) -> set:
    present = set()
    for e in a:
        for k in range(NVARS):
            if e[k]:
                present.add(k)
    return present


_CTX = flint.fmpz_mpoly_ctx.get(VARS, "lex")


def _to_flint(a: Poly):
    return _CTX.from_dict(a)


def _from_flint(p) -> Poly:
    return {tuple(e): int(c) for e, c in p.to_dict().items()}


_GCD_CACHE: Dict[tuple, Poly] = {}


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Greatest common divisor in Z[r, s, rp, q] (exponents must be nonnegative)."""
    key = (frozenset(a.items()), frozenset(b.items()))
    hit = _GCD_CACHE.get(key)
    if hit is None:
        hit = _from_flint(_to_flint(a).gcd(_to_flint(b)))
        if len(_GCD_CACHE) > 200_000:
            _GCD_CACHE.clear()
        _GCD_CACHE[key] = hit
    return hit


# ---------------------------------------------------------------------------
# value types


def _monomial_str(e: Exp) -> str:
    parts = []
    for name, k in zip(VARS, e):
        if k == 1:
            parts.append(name)
        elif k:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


class LaurentPoly:
    """Sparse Laurent polynomial ``{exponent vector: rational coefficient}``."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Exp, Union[int, Fraction]] | None = None):
        self.terms = {tuple(e): c for e, c in (terms or {}).items() if c}

    @classmethod
    def monomial(cls, exponents: Mapping[str, int], coeff=1) -> "LaurentPoly":
        return cls({monomial_exp(exponents): coeff})

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        out: Dict[Exp, Union[int, Fraction]] = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = _eadd(ea, eb)
                out[e] = out.get(e, 0) + ca * cb
        return LaurentPoly(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentPoly) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        return f"LaurentPoly({_poly_str(self.terms)})"

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def integral(self) -> Tuple[Poly, int]:
        """Clear coefficient denominators: returns ``(int poly, d)`` with self = poly/d."""
        d = 1
        for c in self.terms.values():
            if isinstance(c, Fraction):
                d = d * c.denominator // igcd(d, c.denominator)
        return {e: int(c * d) for e, c in self.terms.items()}, d


def monomial_exp(exponents: Mapping[str, int]) -> Exp:
    e = [0] * NVARS
    for name, k in exponents.items():
        try:
            e[_VAR_INDEX[name]] += k
        except KeyError:
            raise ScalarError(f"unknown parameter {name!r}; expected one of {VARS}") from None
    return tuple(e)


def _poly_str(p: Poly) -> str:
    if not p:
        return "0"
    out = []
    for e in sorted(p, reverse=True):
        c = p[e]
        mono = _monomial_str(e)
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        out.append((sign, body))
    text = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sign, body in out[1:]:
        text += f" {sign} {body}"
    return text


Number = Union[int, Fraction, "Scalar"]


class Scalar:
    """Canonical element of Q(r, s, rp, q)."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: Poly, den: Poly, _canonical: bool = False):
        if not _canonical:
            num, den = _canonicalize(num, den)
        self.num = num
        self.den = den
        self._hash = None

    # construction ---------------------------------------------------------
    @classmethod
    def const(cls, value: Union[int, Fraction]) -> "Scalar":
        value = Fraction(value)
        if not value:
            return ZERO
        return cls({ZERO_EXP: value.numerator}, {ZERO_EXP: value.denominator}, True)

    @classmethod
    def var(cls, name: str, power: int = 1) -> "Scalar":
        return cls.monomial({name: power})

    @classmethod
    def monomial(cls, exponents: Mapping[str, int], coeff: int = 1) -> "Scalar":
        return cls({monomial_exp(exponents): coeff}, dict(_ONE))

    @classmethod
    def from_laurent(cls, num: LaurentPoly, den: LaurentPoly | None = None) -> "Scalar":
        n, dn = num.integral()
        if den is None:
            d, dd = dict(_ONE), 1
        else:
            d, dd = den.integral()
        return cls(p_scale(n, dd), p_scale(d, dn))

    @staticmethod
    def coerce(x: Number) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        if isinstance(x, (int, Fraction)):
            return Scalar.const(x)
        raise TypeError(f"cannot use {type(x).__name__} as a scalar")

    # predicates -----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.num

    def is_one(self) -> bool:
        return self.num == _ONE and self.den == _ONE

    def is_constant(self) -> bool:
        return (not self.num or p_is_const(self.num)) and p_is_const(self.den)

    def is_laurent(self) -> bool:
        """True when the denominator is an integer (element of Q[r^±, ...])."""
        return p_is_const(self.den)

    def is_monomial(self) -> bool:
        return len(self.num) == 1 and p_is_const(self.den)

    def variables(self) -> set:
        return {VARS[k] for k in _vars_of(self.num) | _vars_of(self.den)}

    def to_fraction(self) -> Fraction:
        if not self.is_constant():
            raise ScalarError(f"{self} is not a constant")
        if not self.num:
            return Fraction(0)
        return Fraction(self.num[ZERO_EXP], self.den[ZERO_EXP])

    # arithmetic -----------------------------------------------------------
    def __add__(self, other: Number) -> "Scalar":
        other = Scalar.coerce(other)
        if not other.num:
            return self
        if not self.num:
            return other
        if self.den == _ONE and other.den == _ONE:
            n = p_add(self.num, other.num)
            return Scalar(n, dict(_ONE), True) if n else ZERO
        if self.den == other.den:
            return Scalar(p_add(self.num, other.num), self.den)
        g = poly_gcd(self.den, other.den)
        if p_is_const(g):
            n = p_add(p_mul(self.num, other.den), p_mul(other.num, self.den))
            d = p_mul(self.den, other.den)
        else:
            a = p_exact_div(self.den, g)
            b = p_exact_div(other.den, g)
            n = p_add(p_mul(self.num, b), p_mul(other.num, a))
            d = p_mul(self.den, b)
        return Scalar(n, d)

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        if not self.num:
            return self
        return Scalar(p_neg(self.num), self.den, True)

    def __sub__(self, other: Number) -> "Scalar":
        return self + (-Scalar.coerce(other))

    def __rsub__(self, other: Number) -> "Scalar":
        return Scalar.coerce(other) + (-self)

    def __mul__(self, other: Number) -> "Scalar":
        if isinstance(other, int):
            if other == 1:
                return self
            if not other or not self.num:
                return ZERO
            if self.den == _ONE:
                return Scalar(p_scale(self.num, other), self.den, True)
        other = Scalar.coerce(other)
        if not self.num or not other.num:
            return ZERO
        if self.den == _ONE and other.den == _ONE:
            return Scalar(p_mul(self.num, other.num), dict(_ONE), True)
        if self.is_monomial() and other.is_monomial():
            n, d = _fix_content(p_mul(self.num, other.num), p_mul(self.den, other.den))
            return Scalar(n, d, True)
        if self.is_monomial() or other.is_monomial():
            # a unit times a reduced fraction: only integer content can cancel
            n = p_mul(self.num, other.num)
            d = p_mul(self.den, other.den)
            if len(d) > 1:
                n, d = _fix_content(n, d)
                return Scalar(n, d, True)
            return Scalar(n, d)
        return Scalar(p_mul(self.num, other.num), p_mul(self.den, other.den))

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if not self.num:
            raise ZeroDivisionError("inverse of the zero scalar")
        return Scalar(self.den, self.num)

    def __truediv__(self, other: Number) -> "Scalar":
        return self * Scalar.coerce(other).inverse()

    def __rtruediv__(self, other: Number) -> "Scalar":
        return Scalar.coerce(other) * self.inverse()

    def __pow__(self, n: int) -> "Scalar":
        if not isinstance(n, int):
            raise TypeError("scalar exponents must be integers")
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return ONE
        if self.is_monomial():
            (e, c), = self.num.items()
            d = self.den[ZERO_EXP]
            return Scalar({tuple(k * n for k in e): c ** n}, {ZERO_EXP: d ** n}, True)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # comparison -----------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Scalar.const(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((frozenset(self.num.items()), frozenset(self.den.items())))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.num)

    # evaluation -----------------------------------------------------------
    def specialize(self, assignment: Mapping[str, Union[int, Fraction]]) -> Fraction:
        return specialize(self, assignment)

    def map_parameters(self, mapping: Mapping[str, Mapping[str, int]]) -> "Scalar":
        return map_parameters(self, mapping)

    # printing -------------------------------------------------------------
    def __str__(self) -> str:
        n = _poly_str(self.num)
        if self.den == _ONE:
            return n
        d = _poly_str(self.den)
        if len(self.num) > 1:
            n = f"({n})"
        if len(self.den) > 1:
            d = f"({d})"
        return f"{n}/{d}"

    def __repr__(self) -> str:
        return f"Scalar({self})"

    def numerator(self) -> LaurentPoly:
        return LaurentPoly(self.num)

    def denominator(self) -> LaurentPoly:
        return LaurentPoly(self.den)


def _canonicalize(num: Poly, den: Poly) -> Tuple[Poly, Poly]:
    if not den:
        raise ZeroDivisionError("zero denominator")
    num = {e: c for e, c in num.items() if c}
    if not num:
        return {}, dict(_ONE)
    if len(den) == 1:
        (e, c), = den.items()
        if e != ZERO_EXP:
            num = p_shift(num, tuple(-k for k in e))
        g = igcd(p_content(num), c)
        if c < 0:
            g = -g
        if g != 1:
            num = {e: v // g for e, v in num.items()}
        return num, {ZERO_EXP: c // g}
    dmin = _emin(den)
    if dmin != ZERO_EXP:
        neg = tuple(-k for k in dmin)
        den = p_shift(den, neg)
        num = p_shift(num, neg)
    nmin = _emin(num)
    poly_num = p_shift(num, tuple(-k for k in nmin))
    g = poly_gcd(poly_num, den)
    if not p_is_const(g):
        poly_num = p_exact_div(poly_num, g)
        den = p_exact_div(den, g)
        num = p_shift(poly_num, nmin)
        if len(den) == 1:
            return _canonicalize(num, den)
    content = igcd(p_content(num), p_content(den))
    if den[max(den)] < 0:
        content = -content
    if content != 1:
        num = {e: v // content for e, v in num.items()}
        den = {e: v // content for e, v in den.items()}
    return num, den


def _fix_content(num: Poly, den: Poly) -> Tuple[Poly, Poly]:
    content = igcd(p_content(num), p_content(den))
    if den[max(den)] < 0:
        content = -content
    if content != 1:
        num = {e: v // content for e, v in num.items()}
        den = {e: v // content for e, v in den.items()}
    return num, den


ZERO = Scalar({}, dict(_ONE), True)
ONE = Scalar(dict(_ONE), dict(_ONE), True)


def canonicalize(num: LaurentPoly, den: LaurentPoly) -> Scalar:
    """Canonical scalar for ``num / den``; rejects a zero denominator."""
    if not den:
        raise ZeroDivisionError("zero denominator")
    return Scalar.from_laurent(num, den)


def var(name: str) -> Scalar:
    return Scalar.var(name)


def const(value) -> Scalar:
    return Scalar.const(value)


# ---------------------------------------------------------------------------
# q-combinatorics


def qnumber(n: int, v: Number) -> Scalar:
    """``(n)_v = 1 + v + ... + v^(n-1)``."""
    if n < 0:
        raise ValueError("qnumber needs n >= 0")
    v = Scalar.coerce(v)
    total = ZERO
    power = ONE
    for _ in range(n):
        total = total + power
        power = power * v
    return total


def qfactorial(n: int, v: Number) -> Scalar:
    result = ONE
    for k in range(1, n + 1):
        result = result * qnumber(k, v)
    return result


def qbinom(n: int, k: int, v: Number) -> Scalar:
    """Gaussian binomial ``(n)_v! / ((k)_v! (n-k)_v!)``.

    Built by the q-Pascal rule so that no division occurs; the result is a
    polynomial in ``v``.
    """
    if not 0 <= k <= n:
        raise ValueError(f"qbinom needs n >= k >= 0, got n={n}, k={k}")
    v = Scalar.coerce(v)
    row = [ONE]
    for m in range(1, n + 1):
        nxt = [ONE] * (m + 1)
        vp = v
        for j in range(1, m):
            nxt[j] = row[j - 1] + vp * row[j]
            vp = vp * v
        row = nxt
    return row[k]


# ---------------------------------------------------------------------------
# evaluation and parameter maps


def _eval_poly(p: Poly, point: Tuple[Fraction, ...]) -> Fraction:
    total = Fraction(0)
    for e, c in p.items():
        term = Fraction(c)
        for k in range(NVARS):
            if e[k]:
                term *= point[k] ** e[k]
        total += term
    return total


def specialize(x: Scalar, assignment: Mapping[str, Union[int, Fraction]]) -> Fraction:
    """Evaluate ``x`` at a point with nonzero rational coordinates."""
    point = [Fraction(1)] * NVARS
    needed = x.variables()
    missing = needed - set(assignment)
    if missing:
        raise SpecializationError(f"no value given for {sorted(missing)}")
    for name, value in assignment.items():
        value = Fraction(value)
        if name in needed and value == 0:
            raise SpecializationError(f"parameter {name} must be nonzero")
        point[_VAR_INDEX[name]] = value
    point = tuple(point)
    d = _eval_poly(x.den, point)
    if d == 0:
        raise SpecializationError(f"denominator vanishes: {_poly_str(x.den)}")
    return _eval_poly(x.num, point) / d


def map_parameters(x: Scalar, mapping: Mapping[str, Mapping[str, int]]) -> Scalar:
    """Apply a monomial substitution ``name -> Laurent monomial`` to ``x``.

    Every parameter occurring in ``x`` must be mapped (use ``{name: 1}`` for
    the identity).
    """
    missing = x.variables() - set(mapping)
    if missing:
        raise ScalarError(f"parameter map does not cover {sorted(missing)}")
    images = [None] * NVARS
    for name, target in mapping.items():
        images[_VAR_INDEX[name]] = monomial_exp(target)

    def sub(p: Poly) -> Poly:
        out: Poly = {}
        for e, c in p.items():
            t = ZERO_EXP
            for k in range(NVARS):
                if e[k]:
                    img = images[k]
                    t = _eadd(t, tuple(e[k] * a for a in img))
            out[t] = out.get(t, 0) + c
        return {e: c for e, c in out.items() if c}

    return Scalar(sub(x.num), sub(x.den))
