"""Cartan data, the Euler form on the root lattice, and structure constants.

Nodes are numbered ``1..rank``; weights are integer tuples of length ``rank``
holding the coordinates of ``mu = sum mu_i alpha_i``.  Named types follow
Bourbaki numbering with the row convention ``a_ij = 2(a_i, a_j)/(a_i, a_i)``,
so ``d_i a_ij = d_j a_ji`` with ``d_i = (a_i, a_i)/2``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Optional, Sequence, Tuple

from .scalars import ONE, Scalar, var

Weight = Tuple[int, ...]


class CartanError(ValueError):
    pass


@dataclass(frozen=True)
class CartanDatum:
    matrix: Tuple[Tuple[int, ...], ...]
    d: Tuple[int, ...]
    name: str = "custom"
    _euler: Tuple[Tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = len(self.matrix)
        table = tuple(
            tuple(
                self.d[i] * self.matrix[i][j] if i < j else (self.d[i] if i == j else 0)
                for j in range(n)
            )
            for i in range(n)
        )
        object.__setattr__(self, "_euler", table)

    @property
    def rank(self) -> int:
        return len(self.matrix)

    @property
    def nodes(self) -> range:
        return range(1, self.rank + 1)

    def a(self, i: int, j: int) -> int:
        return self.matrix[i - 1][j - 1]

    def di(self, i: int) -> int:
        return self.d[i - 1]

    def euler_basis(self, i: int, j: int) -> int:
        """``<alpha_i, alpha_j>`` for 1-based node indices."""
        return self._euler[i - 1][j - 1]

    def euler(self, mu: Weight, nu: Weight) -> int:
        if len(mu) != self.rank or len(nu) != self.rank:
            raise CartanError(f"weights must have length {self.rank}")
        E = self._euler
        total = 0
        for i, a in enumerate(mu):
            if a:
                row = E[i]
                for j, b in enumerate(nu):
                    if b:
                        total += a * b * row[j]
        return total

    def simple_root(self, i: int) -> Weight:
        if not 1 <= i <= self.rank:
            raise CartanError(f"node index {i} out of range 1..{self.rank}")
        return tuple(1 if k == i - 1 else 0 for k in range(self.rank))

    def zero(self) -> Weight:
        return (0,) * self.rank

    def is_finite_type(self) -> bool:
        """All leading principal minors of the symmetrized matrix are positive."""
        n = self.rank
        sym = [[Fraction(self.d[i] * self.matrix[i][j]) for j in range(n)] for i in range(n)]
        # Gaussian elimination without pivoting: pivots are ratios of leading minors
        for k in range(n):
            if sym[k][k] <= 0:
                return False
            for i in range(k + 1, n):
                f = sym[i][k] / sym[k][k]
                for j in range(k, n):
                    sym[i][j] -= f * sym[k][j]
        return True

    def describe(self) -> str:
        rows = "; ".join(" ".join(str(x) for x in row) for row in self.matrix)
        return f"{self.name}: matrix [{rows}], d = {self.d}"


# ---------------------------------------------------------------------------
# weights


def w_add(a: Weight, b: Weight) -> Weight:
    return tuple(x + y for x, y in zip(a, b))


def w_sub(a: Weight, b: Weight) -> Weight:
    return tuple(x - y for x, y in zip(a, b))


def w_neg(a: Weight) -> Weight:
    return tuple(-x for x in a)


def w_scale(k: int, a: Weight) -> Weight:
    return tuple(k * x for x in a)


def height(a: Weight) -> int:
    return sum(a)


def is_nonneg(a: Weight) -> bool:
    return all(x >= 0 for x in a)


def format_weight(a: Weight) -> str:
    parts = []
    for i, k in enumerate(a, start=1):
        if k == 1:
            parts.append(f"a{i}")
        elif k:
            parts.append(f"{k}a{i}")
    return " + ".join(parts).replace("+ -", "- ") if parts else "0"


# ---------------------------------------------------------------------------
# construction


def _symmetrizers(matrix: Sequence[Sequence[int]]) -> Tuple[int, ...]:
    n = len(matrix)
    d: list = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        comp = [start]
        d[start] = Fraction(1)
        queue = [start]
        while queue:
            i = queue.pop()
            for j in range(n):
                if j == i or matrix[i][j] == 0:
                    continue
                want = d[i] * Fraction(matrix[i][j], matrix[j][i])
                if d[j] is None:
                    d[j] = want
                    comp.append(j)
                    queue.append(j)
                elif d[j] != want:
                    raise CartanError("not symmetrizable")
        lcm_den = reduce(lambda x, y: x * y // gcd(x, y), (d[k].denominator for k in comp), 1)
        ints = [int(d[k] * lcm_den) for k in comp]
        g = reduce(gcd, ints)
        for k, v in zip(comp, ints):
            d[k] = v // g
    return tuple(int(x) for x in d)


def validate(matrix: Sequence[Sequence[int]], symmetrizers: Optional[Sequence[int]] = None,
             name: str = "custom") -> CartanDatum:
    """Check a generalized Cartan matrix and attach symmetrizers.

    When ``symmetrizers`` is omitted the smallest positive integer solution of
    ``d_i a_ij = d_j a_ji`` is computed for each connected component.
    """
    n = len(matrix)
    if n == 0 or any(len(row) != n for row in matrix):
        raise CartanError("Cartan matrix must be square and nonempty")
    m = tuple(tuple(int(x) for x in row) for row in matrix)
    for i in range(n):
        if m[i][i] != 2:
            raise CartanError(f"diagonal entry a_{i + 1}{i + 1} = {m[i][i]}, expected 2")
        for j in range(n):
            if i != j and m[i][j] > 0:
                raise CartanError(f"off-diagonal entry a_{i + 1}{j + 1} = {m[i][j]} is positive")
            if i != j and (m[i][j] == 0) != (m[j][i] == 0):
                raise CartanError(f"not symmetrizable: a_{i + 1}{j + 1} and a_{j + 1}{i + 1} "
                                  "must vanish together")
    if symmetrizers is None:
        d = _symmetrizers(m)
    else:
        d = tuple(int(x) for x in symmetrizers)
        if len(d) != n or any(x <= 0 for x in d):
            raise CartanError("symmetrizers must be positive integers, one per node")
        if reduce(gcd, d) != 1:
            raise CartanError("symmetrizers must be relatively prime")
        for i in range(n):
            for j in range(n):
                if d[i] * m[i][j] != d[j] * m[j][i]:
                    raise CartanError(
                        f"not symmetrizable: d_{i + 1} a_{i + 1}{j + 1} != d_{j + 1} a_{j + 1}{i + 1}")
    return CartanDatum(m, d, name)


def _chain(n: int):
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        m[i][i] = 2
        if i + 1 < n:
            m[i][i + 1] = m[i + 1][i] = -1
    return m


def _exceptional_e(n: int):
    m = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    edges = [(1, 3), (3, 4), (4, 5), (2, 4)] + [(k, k + 1) for k in range(5, n)]
    for a, b in edges:
        m[a - 1][b - 1] = m[b - 1][a - 1] = -1
    return m


def cartan_type(spec: str) -> CartanDatum:
    """Named finite type such as ``"A2"``, ``"B3"``, ``"G2"`` (Bourbaki numbering)."""
    match = re.fullmatch(r"\s*([A-Ga-g])_?(\d+)\s*", spec)
    if not match:
        raise CartanError(f"unrecognised Cartan type {spec!r}")
    letter, n = match.group(1).upper(), int(match.group(2))
    name = f"{letter}{n}"
    if letter == "A" and n >= 1:
        m = _chain(n)
    elif letter == "B" and n >= 2:
        m = _chain(n)
        m[n - 1][n - 2] = -2
    elif letter == "C" and n >= 2:
        m = _chain(n)
        m[n - 2][n - 1] = -2
    elif letter == "D" and n >= 4:
        m = _chain(n)
        m[n - 2][n - 1] = m[n - 1][n - 2] = 0
        m[n - 3][n - 1] = m[n - 1][n - 3] = -1
    elif letter == "E" and n in (6, 7, 8):
        m = _exceptional_e(n)
    elif letter == "F" and n == 4:
        m = _chain(4)
        m[2][1] = -2
    elif letter == "G" and n == 2:
        m = [[2, -3], [-1, 2]]
    else:
        raise CartanError(f"no finite type {name}")
    return validate(m, name=name)


BUILTIN_TYPES = ("A1", "A2", "A3", "A4", "B2", "B3", "C2", "C3", "D4", "D5",
                 "E6", "E7", "E8", "F4", "G2")


# ---------------------------------------------------------------------------
# structure constants


def _params(r: Optional[Scalar], s: Optional[Scalar]):
    return (var("r") if r is None else r), (var("s") if s is None else s)


def c_coeff(datum: CartanDatum, i: int, j: int, k: int,
            r: Optional[Scalar] = None, s: Optional[Scalar] = None) -> Scalar:
    """``(r_i s_i^-1)^(k(k-1)/2) r^(k<j,i>) s^(-k<i,j>)`` for ``i != j``."""
    if i == j:
        raise CartanError("c_coeff needs i != j")
    if k < 0:
        raise CartanError("c_coeff needs k >= 0")
    r, s = _params(r, s)
    if k == 0:
        return ONE
    di = datum.di(i)
    v = r ** di / s ** di
    return v ** (k * (k - 1) // 2) * r ** (k * datum.euler_basis(j, i)) * s ** (-k * datum.euler_basis(i, j))


CONJUGATION_KINDS = ("e-by-w", "e-by-wp", "f-by-w", "f-by-wp")


def conjugation_exponents(datum: CartanDatum, kind: str, j: int, mu: Weight) -> Tuple[int, int]:
    """Exponents ``(a, b)`` with ``w_mu x_j w_mu^-1 = r^a s^b x_j``."""
    aj = datum.simple_root(j)
    if kind == "e-by-w":
        return datum.euler(aj, mu), -datum.euler(mu, aj)
    if kind == "e-by-wp":
        return -datum.euler(mu, aj), datum.euler(aj, mu)
    if kind == "f-by-w":
        return -datum.euler(aj, mu), datum.euler(mu, aj)
    if kind == "f-by-wp":
        return datum.euler(mu, aj), -datum.euler(aj, mu)
    raise CartanError(f"unknown conjugation kind {kind!r}")


def conjugation_factor(datum: CartanDatum, kind: str, j: int, mu: Weight,
                       r: Optional[Scalar] = None, s: Optional[Scalar] = None) -> Scalar:
    r, s = _params(r, s)
    a, b = conjugation_exponents(datum, kind, j, mu)
    return r ** a * s ** b
