"""Graded free algebra on the letters ``e_i, f_i, w_mu, w'_mu``.

A word is a tuple of ``Gen`` letters.  Group-like letters are indexed by a
root-lattice weight and every maximal run of them is stored as at most one
``W(mu)`` followed by at most one ``WP(nu)``: the torus is a commutative group,
so this collapses its relations by construction.  No other relation is
applied here; everything relation-aware lives in :mod:`rsquant.urs`.
"""

from __future__ import annotations

from typing import Callable, Dict, Iterable, Iterator, Mapping, NamedTuple, Optional, Tuple, Union

from .cartan import Weight, w_add
from .scalars import ONE, ZERO, Scalar, map_parameters


class Gen(NamedTuple):
    kind: str  # "F", "W", "WP" or "E"
    arg: Union[int, Weight]

    def __str__(self) -> str:
        if self.kind in ("E", "F"):
            return f"{self.kind.lower()}{self.arg}"
        return _omega_str("w" if self.kind == "W" else "wp", self.arg)


def _omega_str(stem: str, mu: Weight) -> str:
    parts = []
    for i, k in enumerate(mu, start=1):
        if k == 1:
            parts.append(f"{stem}{i}")
        elif k:
            parts.append(f"{stem}{i}^{k}")
    return "*".join(parts)


Word = Tuple[Gen, ...]
TORUS = ("W", "WP")


def E(i: int) -> Gen:
    return Gen("E", i)


def F(i: int) -> Gen:
    return Gen("F", i)


def W(mu: Weight) -> Gen:
    return Gen("W", tuple(mu))


def WP(mu: Weight) -> Gen:
    return Gen("WP", tuple(mu))


def _collapse(word: Iterable[Gen]) -> Word:
    out = []
    run_w = run_wp = None
    for g in word:
        if g.kind == "W":
            run_w = g.arg if run_w is None else w_add(run_w, g.arg)
        elif g.kind == "WP":
            run_wp = g.arg if run_wp is None else w_add(run_wp, g.arg)
        else:
            if run_w is not None or run_wp is not None:
                _flush(out, run_w, run_wp)
                run_w = run_wp = None
            out.append(g)
    if run_w is not None or run_wp is not None:
        _flush(out, run_w, run_wp)
    return tuple(out)


def _flush(out, run_w, run_wp):
    if run_w is not None and any(run_w):
        out.append(Gen("W", run_w))
    if run_wp is not None and any(run_wp):
        out.append(Gen("WP", run_wp))


def make_word(gens: Iterable[Gen]) -> Word:
    return _collapse(gens)


def concat(a: Word, b: Word) -> Word:
    if a and b and a[-1].kind in TORUS and b[0].kind in TORUS:
        return _collapse(a + b)
    return a + b


def word_weight(word: Word, rank: int) -> Weight:
    w = [0] * rank
    for g in word:
        if g.kind == "E":
            w[g.arg - 1] += 1
        elif g.kind == "F":
            w[g.arg - 1] -= 1
    return tuple(w)


def word_str(word: Word) -> str:
    return "*".join(str(g) for g in word) if word else "1"


def _word_key(word: Word):
    return (len(word), tuple((g.kind, g.arg) for g in word))


class Inhomogeneous(Exception):
    pass


class Element:
    """Finite linear combination of words with Scalar coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[Word, Scalar]] = None, _clean: bool = False):
        if _clean:
            self.terms = terms
        else:
            self.terms = {w: c for w, c in (terms or {}).items() if not c.is_zero()}

    # constructors ---------------------------------------------------------
    @classmethod
    def word(cls, word: Iterable[Gen], coeff: Scalar = ONE) -> "Element":
        coeff = Scalar.coerce(coeff)
        if coeff.is_zero():
            return cls()
        return cls({make_word(word): coeff}, True)

    @classmethod
    def scalar(cls, c) -> "Element":
        return cls.word((), Scalar.coerce(c))

    @classmethod
    def gen(cls, g: Gen) -> "Element":
        return cls.word((g,))

    # linear structure -----------------------------------------------------
    def __add__(self, other: "Element") -> "Element":
        if not isinstance(other, Element):
            other = Element.scalar(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            prev = out.get(w)
            if prev is None:
                out[w] = c
            else:
                v = prev + c
                if v.is_zero():
                    del out[w]
                else:
                    out[w] = v
        return Element(out, True)

    __radd__ = __add__

    def __neg__(self) -> "Element":
        return Element({w: -c for w, c in self.terms.items()}, True)

    def __sub__(self, other: "Element") -> "Element":
        if not isinstance(other, Element):
            other = Element.scalar(other)
        return self + (-other)

    def __rsub__(self, other) -> "Element":
        return Element.scalar(other) - self

    def scale(self, c) -> "Element":
        c = Scalar.coerce(c)
        if c.is_zero():
            return Element()
        if c.is_one():
            return self
        return Element({w: v * c for w, v in self.terms.items()})

    def __mul__(self, other) -> "Element":
        if not isinstance(other, Element):
            return self.scale(other)
        return mul(self, other)

    def __rmul__(self, other) -> "Element":
        return self.scale(other)

    def __pow__(self, n: int) -> "Element":
        if n < 0:
            raise ValueError("negative powers of elements are not defined")
        result = Element.scalar(1)
        for _ in range(n):
            result = result * self
        return result

    # inspection -----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __iter__(self) -> Iterator[Tuple[Word, Scalar]]:
        return iter(self.terms.items())

    def __len__(self) -> int:
        return len(self.terms)

    def coeff(self, word: Iterable[Gen]) -> Scalar:
        return self.terms.get(make_word(word), ZERO)

    def words(self):
        return sorted(self.terms, key=_word_key)

    def weights(self, rank: int) -> set:
        return {word_weight(w, rank) for w in self.terms}

    def weight(self, rank: int) -> Weight:
        """Common weight of all words; raises ``Inhomogeneous`` otherwise.

        The zero element has weight zero.
        """
        ws = self.weights(rank)
        if not ws:
            return (0,) * rank
        if len(ws) > 1:
            raise Inhomogeneous(f"element has {len(ws)} distinct weights")
        return next(iter(ws))

    def graded_component(self, beta: Weight, rank: int) -> "Element":
        beta = tuple(beta)
        return Element({w: c for w, c in self.terms.items() if word_weight(w, rank) == beta}, True)

    def graded_components(self, rank: int) -> Dict[Weight, "Element"]:
        out: Dict[Weight, Dict[Word, Scalar]] = {}
        for w, c in self.terms.items():
            out.setdefault(word_weight(w, rank), {})[w] = c
        return {b: Element(t, True) for b, t in out.items()}

    def map_coefficients(self, fn: Callable[[Scalar], Scalar]) -> "Element":
        return Element({w: fn(c) for w, c in self.terms.items()})

    def letters(self) -> set:
        return {g.kind for w in self.terms for g in w}

    def __str__(self) -> str:
        from .parse import format_element
        return format_element(self)

    def __repr__(self) -> str:
        return f"Element({self})"


def mul(x: Element, y: Element) -> Element:
    out: Dict[Word, Scalar] = {}
    for wa, ca in x.terms.items():
        for wb, cb in y.terms.items():
            w = concat(wa, wb)
            c = ca * cb
            prev = out.get(w)
            out[w] = c if prev is None else prev + c
    return Element(out)


def word_element(*gens: Gen) -> Element:
    return Element.word(gens)


# ---------------------------------------------------------------------------
# tensor square


class TensorElement:
    """Finite linear combination of pairs of words."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[Tuple[Word, Word], Scalar]] = None):
        self.terms = {k: c for k, c in (terms or {}).items() if not c.is_zero()}

    @classmethod
    def pure(cls, a: Element, b: Element) -> "TensorElement":
        out: Dict[Tuple[Word, Word], Scalar] = {}
        for wa, ca in a.terms.items():
            for wb, cb in b.terms.items():
                out[(wa, wb)] = ca * cb
        return cls(out)

    def __add__(self, other: "TensorElement") -> "TensorElement":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return TensorElement(out)

    def __neg__(self) -> "TensorElement":
        return TensorElement({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "TensorElement") -> "TensorElement":
        return self + (-other)

    def scale(self, c) -> "TensorElement":
        c = Scalar.coerce(c)
        return TensorElement({k: v * c for k, v in self.terms.items()})

    def __mul__(self, other: "TensorElement") -> "TensorElement":
        out: Dict[Tuple[Word, Word], Scalar] = {}
        for (a, b), c1 in self.terms.items():
            for (c, d), c2 in other.terms.items():
                key = (concat(a, c), concat(b, d))
                v = c1 * c2
                out[key] = out[key] + v if key in out else v
        return TensorElement(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, TensorElement) and self.terms == other.terms

    def is_zero(self) -> bool:
        return not self.terms

    def __iter__(self):
        return iter(self.terms.items())

    def __len__(self) -> int:
        return len(self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (a, b), c in sorted(self.terms.items(), key=lambda kv: (_word_key(kv[0][0]), _word_key(kv[0][1]))):
            parts.append(f"({c}) {word_str(a)} (x) {word_str(b)}")
        return " + ".join(parts)


# ---------------------------------------------------------------------------
# maps


def apply_map(images: Union[Mapping[Gen, Element], Callable[[Gen], Element]], x: Element,
              variant: str = "homomorphism",
              scalar_action: Optional[Mapping[str, Mapping[str, int]]] = None) -> Element:
    """Extend an assignment on letters to ``x`` (anti)multiplicatively.

    ``scalar_action`` is a parameter substitution applied to every
    coefficient, as for a ring automorphism that moves the parameters.
    """
    if variant not in ("homomorphism", "anti-homomorphism"):
        raise ValueError(f"unknown variant {variant!r}")
    lookup = images if callable(images) else images.get
    cache: Dict[Gen, Element] = {}

    def image(g: Gen) -> Element:
        if g not in cache:
            img = lookup(g)
            if img is None:
                raise KeyError(f"no image given for generator {g}")
            cache[g] = img
        return cache[g]

    total = Element()
    for word, c in x.terms.items():
        if scalar_action is not None:
            c = map_parameters(c, scalar_action)
        letters = reversed(word) if variant == "anti-homomorphism" else word
        acc = Element.scalar(c)
        for g in letters:
            acc = acc * image(g)
        total = total + acc
    return total
