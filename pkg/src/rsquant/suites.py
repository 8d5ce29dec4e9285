"""Verification suites and the exact/specialize runner."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .cartan import BUILTIN_TYPES, CartanDatum, cartan_type, conjugation_exponents, height, w_add
from .cocycle import (Bicharacter, TwistContext, associated_object_context, cocycle_defect,
                      q_family_contexts, structure_constant_comparison, deformation_checks, twist_product)
from .freealg import E, F, W, WP, Element, Gen, Word, make_word, word_weight
from .hopf import HopfMaps, generator_letters, words_upto
from .kashiwara import (SkewDerivations, probe_words, verify_descent, verify_commutation, verify_cancellations,
                        verify_power_rule, verify_commutator_extraction, verify_operator_serre)
from .pairing import PairingEngine, determinant, mirror
from .report import CaseResult, Report, check
from .scalars import ONE, Scalar, var
from .urs import MAX_HEIGHT_LIMIT, HeightBoundError, UrsAlgebra, e_words, weights_of_height

SUITES = ("relations", "hopf", "pairing", "cocycle", "kashiwara")
MODES = ("exact", "specialize")


@dataclass
class Params:
    """Parameter values for one run: symbols in exact mode, rationals in specialize mode."""

    r: Optional[Fraction] = None
    s: Optional[Fraction] = None
    rp: Optional[Fraction] = None
    q: Optional[Fraction] = None

    @property
    def exact(self) -> bool:
        return self.r is None

    def label(self) -> str:
        if self.exact:
            return "symbolic"
        return f"r={self.r}, s={self.s}, r'={self.rp}, q={self.q}"

    def algebra(self, datum: CartanDatum) -> UrsAlgebra:
        if self.exact:
            return UrsAlgebra(datum)
        return UrsAlgebra(datum, Scalar.const(self.r), Scalar.const(self.s))


def _opt(x: Optional[Fraction]) -> Optional[Scalar]:
    return None if x is None else Scalar.const(x)


def _nondegenerate(datum: CartanDatum, pairs: Sequence[Tuple[Fraction, Fraction]]) -> bool:
    for a, b in pairs:
        if a == 0 or b == 0:
            return False
        for d in set(datum.d):
            if a ** d == b ** d or a ** d == -(b ** d):
                return False
    return True


def random_points(datum: CartanDatum, seed: int, count: int = 3, bound: int = 100) -> List[Params]:
    """Seeded rational points avoiding every degeneracy used by the suites.

    Components have numerators and denominators bounded by ``bound``; a point is
    rejected if any parameter pair that must stay generic has ``x_i = +-y_i``
    (source, both twisted targets, the associated object and the q-family).
    """
    rng = random.Random(seed)

    def draw() -> Fraction:
        while True:
            num = rng.randint(-bound, bound)
            if num:
                return Fraction(num, rng.randint(1, bound))

    out: List[Params] = []
    while len(out) < count:
        r, s, rp, q = draw(), draw(), draw(), draw()
        pairs = [(r, s), (rp, rp * s / r), (rp, rp * r / s), (1 / s, 1 / r),
                 (r, r / q ** 2), (q ** 2, Fraction(1)), (q, 1 / q)]
        if _nondegenerate(datum, pairs):
            out.append(Params(r, s, rp, q))
    return out


# ---------------------------------------------------------------------------
# relations


def _first_failure(items, predicate):
    for item in items:
        if not predicate(item):
            return item
    return None


def exponent_checks(datum: CartanDatum) -> List[CaseResult]:
    """Euler-form symmetrization and the one-parameter specialization ``r = q, s = q^-1``."""
    out = []
    eb = datum.euler_basis
    bad = [(i, j) for i in datum.nodes for j in datum.nodes
           if eb(j, i) + eb(i, j) != datum.di(i) * datum.a(i, j)]
    out.append(check("euler form symmetrizes to d_i a_ij", {"type": datum.name}, not bad, bad))
    q = var("q")
    bad = []
    for kind, sign in (("e-by-w", 1), ("e-by-wp", -1), ("f-by-w", -1), ("f-by-wp", 1)):
        for i in datum.nodes:
            for j in datum.nodes:
                a, b = conjugation_exponents(datum, kind, j, datum.simple_root(i))
                got = q ** a * q.inverse() ** b
                want = q ** (sign * datum.di(i) * datum.a(i, j))
                if got != want:
                    bad.append((kind, i, j, str(got), str(want)))
    out.append(check("conjugation factors at r=q, s=q^-1", {"type": datum.name}, not bad, bad))
    return out


def relations_suite(alg: UrsAlgebra, max_height: int, rng: random.Random,
                    word_length: Optional[int] = None, full_length: int = 3,
                    products: int = 200) -> List[CaseResult]:
    ctx = alg.serre_context(max_height)
    out: List[CaseResult] = []
    for label, rel in alg.relations():
        res = alg.canonical(rel, ctx)
        out.append(check(f"relation {label}", {"relation": label}, res.is_zero(), res))

    n = max_height if word_length is None else word_length
    ef = [g for g in generator_letters(alg, torus=False)]
    full = generator_letters(alg, torus=True)
    for name, letters, length in (("e/f", ef, n), ("full", full, full_length)):
        words = words_upto(letters, length)

        def idem(w: Word) -> bool:
            nf = alg.straighten(Element.word(w))
            return alg.straighten(nf) == nf

        def mult(w: Word) -> bool:
            whole = alg.straighten(Element.word(w))
            for k in range(1, len(w)):
                a = alg.straighten(Element.word(w[:k]))
                b = alg.straighten(Element.word(w[k:]))
                if alg.straighten(a * b) != whole:
                    return False
            return True

        bad = _first_failure(words, idem)
        out.append(check(f"straighten idempotent ({name} words, length <= {length})",
                         {"alphabet": name, "max_length": length, "words": len(words)},
                         bad is None, None if bad is None else Element.word(bad)))
        bad = _first_failure(words, mult)
        out.append(check(f"straighten multiplicative ({name} words, length <= {length})",
                         {"alphabet": name, "max_length": length, "words": len(words)},
                         bad is None, None if bad is None else Element.word(bad)))

    bad = None
    for _ in range(products):
        parts = [tuple(rng.choice(full) for _ in range(rng.randint(1, 3))) for _ in range(rng.randint(2, 3))]
        x = Element.scalar(1)
        for p in parts:
            x = x * Element.word(p)
        if alg.straighten(x, "leftmost") != alg.straighten(x, "rightmost"):
            bad = x
            break
    out.append(check("triangular form independent of rewriting order",
                     {"products": products}, bad is None, bad))
    out.extend(exponent_checks(alg.datum))
    return out


# ---------------------------------------------------------------------------
# hopf


def hopf_suite(alg: UrsAlgebra, max_height: int, rng: random.Random, samples: int = 50) -> List[CaseResult]:
    H = HopfMaps(alg)
    ctx = alg.serre_context(max_height)
    letters = generator_letters(alg)
    words = words_upto(letters, 2)
    out: List[CaseResult] = []
    axioms: List[Tuple[str, Callable[[Element], bool]]] = [
        ("coassociativity", H.check_coassociative),
        ("counit", H.check_counit),
        ("antipode", lambda x: H.check_antipode(x, ctx)),
    ]
    for name, pred in axioms:
        bad = _first_failure(words, lambda w: pred(Element.word(w)))
        out.append(check(f"{name} on words of length <= 2", {"words": len(words)},
                         bad is None, None if bad is None else Element.word(bad)))
    long_words = [tuple(rng.choice(letters) for _ in range(3)) for _ in range(samples)]
    for name, pred in axioms[:2]:
        bad = _first_failure(long_words, lambda w: pred(Element.word(w)))
        out.append(check(f"{name} on random words of length 3", {"samples": samples},
                         bad is None, None if bad is None else Element.word(bad)))
    for label, rel in alg.relations():
        res = H.check_relation(rel, ctx)
        out.append(check(f"coproduct respects {label}", {"relation": label}, res.is_zero(), res))
    return out


# ---------------------------------------------------------------------------
# pairing


def pairing_suite(alg: UrsAlgebra, max_height: int, rng: random.Random, triples: int = 100) -> List[CaseResult]:
    P = PairingEngine(alg)
    ctx = alg.serre_context(max_height)
    datum = alg.datum
    out: List[CaseResult] = []
    bad = []
    for i in datum.nodes:
        for j in datum.nodes:
            want = (alg.si(i) - alg.ri(i)).inverse() if i == j else Scalar.const(0)
            got = P.pair(alg.f(i), alg.e(j))
            if got != want:
                bad.append((i, j, str(got)))
    out.append(check("base case (f_i, e_j)", {}, not bad, bad))

    sample_weights = [datum.zero()] + [datum.simple_root(i) for i in datum.nodes]
    sample_weights += [tuple(-k for k in datum.simple_root(i)) for i in datum.nodes]
    sample_weights.append(tuple(1 for _ in datum.nodes))
    bad = []
    for mu in sample_weights:
        for nu in sample_weights:
            want = alg.rs_power(datum.euler(mu, nu), -datum.euler(nu, mu))
            got = P.pair(alg.wp_mu(mu), alg.w_mu(nu))
            if got != want:
                bad.append((mu, nu, str(got)))
            for i in datum.nodes:
                if not P.pair(alg.wp_mu(mu), alg.e(i)).is_zero() or not P.pair(alg.f(i), alg.w_mu(nu)).is_zero():
                    bad.append((mu, nu, i))
    out.append(check("base case (w'_mu, w_nu) and mixed zeros", {"weights": len(sample_weights)}, not bad, bad))

    low = [w for h in range(4) for b in weights_of_height(alg.rank, h) for w in e_words(b)]
    bad = None
    count = 0
    for x in low:
        bx = word_weight(x, alg.rank)
        for yw in low:
            if word_weight(yw, alg.rank) == bx:
                continue
            count += 1
            if not P.pair_words(mirror(yw), x).is_zero():
                bad = (mirror(yw), x)
                break
        if bad:
            break
    out.append(check("weight orthogonality (heights <= 3)", {"pairs": count}, bad is None,
                     None if bad is None else f"{Element.word(bad[0])} vs {Element.word(bad[1])}"))

    lower_letters = [F(i) for i in datum.nodes] + [WP(datum.simple_root(i)) for i in datum.nodes]
    upper_letters = [E(i) for i in datum.nodes]
    bad = None
    for _ in range(triples):
        ys = [tuple(rng.choice(lower_letters) for _ in range(rng.randint(0, 2))) for _ in range(3)]
        y = make_word(ys[0] + ys[1] + ys[2])
        depth = sum(1 for g in y if g.kind == "F")
        x = [rng.choice(upper_letters) for _ in range(depth)]
        if rng.random() < 0.5:
            x.insert(rng.randint(0, len(x)), W(datum.simple_root(rng.choice(list(datum.nodes)))))
        x = make_word(x)
        k1, k2 = len(make_word(ys[0])), len(make_word(ys[0] + ys[1]))
        vals = {P.pair_words(y, x)}
        for k in (k1, k2):
            if 0 < k < len(y):
                vals.add(P.split_lower(y, x, k))
        for k in range(1, len(x)):
            vals.add(P.split_upper(y, x, k))
        if len(vals) != 1:
            bad = (y, x)
            break
    out.append(check("association consistency on random triples", {"triples": triples}, bad is None,
                     None if bad is None else f"{Element.word(bad[0])} vs {Element.word(bad[1])}"))

    bad = []
    for i, j in alg.serre_pairs():
        Sp = alg.serre_element("plus", i, j)
        Sm = alg.serre_element("minus", i, j)
        beta = alg.weight(Sp)
        for w in e_words(beta):
            if not P.pair(Element.word(mirror(w)), Sp).is_zero():
                bad.append(("plus", i, j, w))
            if not P.pair(Sm, Element.word(w)).is_zero():
                bad.append(("minus", i, j, w))
    out.append(check("pairing kills Serre elements", {}, not bad, bad[:1]))

    bad = []
    for j in datum.nodes:
        for i in datum.nodes:
            mu = datum.simple_root(i)
            for yw in e_words(datum.simple_root(j)) + [(E(j), E(i))]:
                y = mirror(yw)
                lhs = P.pair_words(y, (W(mu), E(j)))
                rhs = alg.conj("e-by-w", j, mu) * P.pair_words(y, (E(j), W(mu)))
                if lhs != rhs:
                    bad.append(("e", i, j))
            for xw in e_words(datum.simple_root(j)) + [(E(i), E(j))]:
                lhs = P.pair_words((WP(mu), F(j)), xw)
                rhs = alg.conj("f-by-wp", j, mu) * P.pair_words((F(j), WP(mu)), xw)
                if lhs != rhs:
                    bad.append(("f", i, j))
    out.append(check("pairing respects torus conjugation", {}, not bad, bad[:1]))

    if alg.rank >= 2:
        beta = tuple(1 if k < 2 else 0 for k in range(alg.rank))
        rows, cols, M = P.gram(beta, ctx)
        P.clear_cache()
        _, _, M2 = P.gram(beta, ctx)
        det = determinant(M)
        out.append(check("gram matrix at a1 + a2", {"weight": list(beta)},
                         len(M) == ctx.dim_plus(beta) and M == M2, M,
                         determinant_nonzero=not det.is_zero()))
    return out


# ---------------------------------------------------------------------------
# cocycle


def cocycle_suite(datum: CartanDatum, params: Params, cases: Sequence[str], rng: random.Random,
                  corollaries: bool = True) -> List[CaseResult]:
    r, s, rp, q = _opt(params.r), _opt(params.s), _opt(params.rp), _opt(params.q)
    out: List[CaseResult] = []
    for case in cases:
        ctx = TwistContext(datum, case, r=r, s=s, rp=rp)
        out.extend(deformation_checks(ctx))
        psi = ctx.psi
        weights = [tuple(rng.randint(-2, 2) for _ in datum.nodes) for _ in range(30)]
        bad = [(g, h, k) for g, h, k in zip(weights, weights[1:], weights[2:])
               if not cocycle_defect(psi, g, h, k).is_zero()]
        out.append(check(f"cocycle condition case {case}", {"case": case, "samples": 28}, not bad, bad[:1]))
        letters = [E(i) for i in datum.nodes]
        bad = None
        for _ in range(20):
            xs = [Element.word(tuple(rng.choice(letters) for _ in range(rng.randint(0, 2)))) for _ in range(3)]
            a = twist_product(twist_product(xs[0], xs[1], psi, datum.rank), xs[2], psi, datum.rank)
            b = twist_product(xs[0], twist_product(xs[1], xs[2], psi, datum.rank), psi, datum.rank)
            if a != b:
                bad = xs
                break
        out.append(check(f"twisted product associative case {case}", {"case": case, "samples": 20},
                         bad is None, bad))
    trivial = TwistContext(datum, "I", r=r, s=s, rp=r)
    out.append(check("trivial twist reduces to plain Serre relations", {},
                     all(c.passed for c in deformation_checks(trivial))))
    if corollaries:
        ao = associated_object_context(datum, r, s)
        for res in deformation_checks(ao):
            res.case_id = "associated-object " + res.case_id
            out.append(res)
        generic, constrained = structure_constant_comparison(datum)
        out.append(check("structure constants of (r,s) and (s^-1,r^-1) coincide iff rs=1", {},
                         constrained and not generic,
                         f"generic equality {generic}, equality under rs=1 {constrained}"))
        for label, ctx in q_family_contexts(datum, r, q):
            for res in deformation_checks(ctx):
                res.case_id = f"q-family {label} " + res.case_id
                out.append(res)
    return out


# ---------------------------------------------------------------------------
# kashiwara


def kashiwara_suite(alg: UrsAlgebra, max_height: int, max_m: int = 6) -> List[CaseResult]:
    ops = SkewDerivations(alg)
    ctx = alg.serre_context(max_height)
    out: List[CaseResult] = []
    for i in alg.datum.nodes:
        for m in range(1, max_m + 1):
            out.extend(verify_power_rule(ops, i, m))
    small = probe_words(alg, min(4, max_height))
    probes = probe_words(alg, max_height)
    for i in alg.datum.nodes:
        for j in alg.datum.nodes:
            for m in (1, 2, 3):
                out.extend(verify_commutation(ops, i, j, m, small))
    out.extend(verify_commutator_extraction(ops, small, ctx))
    out.extend(verify_descent(ops, ctx))
    for i, j in alg.serre_pairs():
        for flavor in ("unprimed", "primed"):
            out.append(verify_operator_serre(ops, flavor, i, j, probes, ctx))
        out.extend(verify_cancellations(ops, i, j, probes, max_m))
    return out


# ---------------------------------------------------------------------------
# runner


def _run_once(suite: str, datum: CartanDatum, params: Params, max_height: int, seed: int,
              cases: Sequence[str]) -> List[CaseResult]:
    rng = random.Random(seed)
    if suite == "cocycle":
        return cocycle_suite(datum, params, cases, rng)
    alg = params.algebra(datum)
    if suite == "relations":
        return relations_suite(alg, max_height, rng)
    if suite == "hopf":
        return hopf_suite(alg, max_height, rng)
    if suite == "pairing":
        return pairing_suite(alg, max_height, rng)
    if suite == "kashiwara":
        return kashiwara_suite(alg, max_height)
    raise ValueError(f"unknown suite {suite!r}")


def _timed(suite, datum, params, max_height, seed, cases) -> List[CaseResult]:
    start = time.perf_counter()
    res = _run_once(suite, datum, params, max_height, seed, cases)
    elapsed = time.perf_counter() - start
    for c in res:
        c.wall_time = elapsed / max(len(res), 1)
    return res


def run_suite(suite: str, datum: CartanDatum, max_height: int = 5, mode: str = "exact",
              seed: int = 0, case: str = "both", points: int = 3) -> Report:
    """Run one suite (or "all") and return its report."""
    if max_height > MAX_HEIGHT_LIMIT:
        raise HeightBoundError(f"height bound exceeds maximum {MAX_HEIGHT_LIMIT}")
    if max_height < 1:
        raise ValueError("height bound must be positive")
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    cases = ("I", "II") if case == "both" else (case,)
    if any(c not in ("I", "II") for c in cases):
        raise ValueError("case must be I, II or both")
    names = SUITES if suite == "all" else (suite,)
    if any(n not in SUITES for n in names):
        raise ValueError(f"unknown suite {suite!r}")
    report = Report(suite, datum.name, mode)
    for name in names:
        if mode == "exact":
            for c in _timed(name, datum, Params(), max_height, seed, cases):
                c.case_id = f"{name}: {c.case_id}" if suite == "all" else c.case_id
                report.cases.append(c)
            continue
        merged: Dict[str, CaseResult] = {}
        order: List[str] = []
        for p in random_points(datum, seed, points):
            for c in _timed(name, datum, p, max_height, seed, cases):
                prev = merged.get(c.case_id)
                if prev is None:
                    c.inputs = dict(c.inputs, points=points)
                    if not c.passed and c.witness is not None:
                        c.witness = f"at {p.label()}: {c.witness}"
                    merged[c.case_id] = c
                    order.append(c.case_id)
                else:
                    prev.wall_time = (prev.wall_time or 0) + (c.wall_time or 0)
                    if prev.passed and not c.passed:
                        prev.status = c.status
                        prev.witness = f"at {p.label()}: {c.witness}"
        for cid in order:
            c = merged[cid]
            c.case_id = f"{name}: {cid}" if suite == "all" else cid
            report.cases.append(c)
    return report
