"""Independent reference computations built on sympy."""

from functools import lru_cache

import sympy as sp

from rsquant.scalars import VARS, Scalar

SYMS = sp.symbols(" ".join(VARS))
SYM = dict(zip(VARS, SYMS))


def to_sympy(x: Scalar):
    def poly(p):
        total = sp.Integer(0)
        for e, c in p.items():
            term = sp.Integer(c)
            for k, a in enumerate(e):
                term *= SYMS[k] ** a
            total += term
        return total

    return poly(x.num) / poly(x.den)


def same(x: Scalar, expr) -> bool:
    return sp.simplify(to_sympy(x) - expr) == 0


R, S = SYM["r"], SYM["s"]


class SympyPairing:
    """Reference pairing on raw letter tuples; splits the upper argument first."""

    def __init__(self, matrix, d):
        self.n = len(d)
        self.form = [[d[i] * matrix[i][j] if i < j else (d[i] if i == j else 0)
                      for j in range(self.n)] for i in range(self.n)]
        self.d = d
        self.pair = lru_cache(maxsize=None)(self._pair)

    def euler(self, mu, nu):
        return sum(mu[i] * nu[j] * self.form[i][j] for i in range(self.n) for j in range(self.n))

    def root(self, i):
        return tuple(int(k == i - 1) for k in range(self.n))

    def delta_letter(self, g):
        kind, arg = g
        if kind == "E":
            return [((g,), (), 1), ((("W", self.root(arg)),), (g,), 1)]
        if kind == "F":
            return [((), (g,), 1), ((g,), (("WP", self.root(arg)),), 1)]
        return [((g,), (g,), 1)]

    def delta(self, word):
        out = [((), (), 1)]
        for g in word:
            out = [(a + b, c + e, x * y) for a, c, x in out for b, e, y in self.delta_letter(g)]
        return out

    @staticmethod
    def counit(word):
        return 0 if any(k in ("E", "F") for k, _ in word) else 1

    def _pair(self, y, x):
        if not y:
            return sp.Integer(self.counit(x))
        if not x:
            return sp.Integer(self.counit(y))
        if len(x) > 1:
            return sum(c * self.pair(a, x[1:]) * self.pair(b, x[:1]) for a, b, c in self.delta(y))
        if len(y) > 1:
            return sum(c * self.pair(y[:1], a) * self.pair(y[1:], b) for a, b, c in self.delta(x))
        (gk, ga), (hk, ha) = y[0], x[0]
        if gk == "F" and hk == "E":
            i = ga
            return 1 / (S ** self.d[i - 1] - R ** self.d[i - 1]) if ga == ha else sp.Integer(0)
        if gk == "WP" and hk == "W":
            return R ** self.euler(ga, ha) * S ** (-self.euler(ha, ga))
        return sp.Integer(0)


def raw(word):
    return tuple((g.kind, g.arg) for g in word)
