import itertools

import pytest
from hypothesis import given, settings, strategies as st

from rsquant.cartan import cartan_type
from rsquant.freealg import E, F, W, WP, Element
from rsquant.scalars import Scalar, qbinom, var
from rsquant.urs import HeightBoundError, UrsAlgebra, e_words, is_normal_word, psi, weights_of_height

from strategies import elements

r, s = var("r"), var("s")
TYPES = ["A2", "B2", "G2", "A3"]


@pytest.fixture(scope="module")
def algs():
    return {t: UrsAlgebra(cartan_type(t)) for t in TYPES}


def positive_roots(datum):
    """Orbit of the simple roots under simple reflections, positive part."""
    n = datum.rank
    a = datum.matrix
    simple = [tuple(int(k == i) for k in range(n)) for i in range(n)]
    seen, todo = set(simple), list(simple)
    while todo:
        b = todo.pop()
        for i in range(n):
            pair = sum(b[j] * a[i][j] for j in range(n))
            img = tuple(b[k] - (pair if k == i else 0) for k in range(n))
            if img not in seen:
                seen.add(img)
                todo.append(img)
    return [b for b in seen if all(x >= 0 for x in b)]


def kostant(datum, beta):
    roots = positive_roots(datum)
    ways = {tuple(0 for _ in beta): 1}
    for root in roots:
        # each root may repeat: coin-change DP over the box below beta
        new = {}
        box = list(itertools.product(*(range(b + 1) for b in beta)))
        for w in sorted(box, key=sum):
            v = ways.get(w, 0)
            prev = tuple(x - y for x, y in zip(w, root))
            if all(x >= 0 for x in prev):
                v += new.get(prev, 0)
            if v:
                new[w] = v
        ways = new
    return ways.get(tuple(beta), 0)


def test_root_oracle_counts():
    assert {t: len(positive_roots(cartan_type(t))) for t in TYPES} == {"A2": 3, "B2": 4, "G2": 6, "A3": 6}


@pytest.mark.parametrize("t", TYPES)
def test_dimensions_match_kostant(algs, t):
    alg = algs[t]
    ctx = alg.serre_context(5)
    for h in range(1, 6 if alg.rank == 2 else 5):
        for beta in weights_of_height(alg.rank, h):
            assert ctx.dim_plus(beta) == kostant(alg.datum, beta), beta


def test_dim_examples(algs):
    ctx = algs["A2"].serre_context(4)
    assert ctx.dim_plus((1, 0)) == 1
    assert ctx.dim_plus((1, 1)) == 2
    assert ctx.dim_plus((2, 1)) == 2


def test_serre_element_a2():
    alg = UrsAlgebra(cartan_type("A2"))
    S = alg.serre_element("plus", 1, 2)
    want = (Element.word((E(1), E(1), E(2))) - Element.word((E(1), E(2), E(1)), r + s)
            + Element.word((E(2), E(1), E(1)), r * s))
    assert S == want
    assert alg.serre_element("minus", 1, 2) == psi(S)
    with pytest.raises(ValueError):
        alg.serre_element("plus", 1, 1)


def test_orthogonal_serre_a3(algs):
    assert algs["A3"].serre_element("plus", 1, 3) == Element.word((E(1), E(3))) - Element.word((E(3), E(1)))


def test_straighten_examples(algs):
    alg = algs["A2"]
    assert alg.straighten(Element.word((E(1), F(2)))) == Element.word((F(2), E(1)))
    got = alg.straighten(Element.word((E(1), F(1))))
    c = (r - s).inverse()
    assert got == Element.word((F(1), E(1))) + Element.word((W((1, 0)),), c) - Element.word((WP((1, 0)),), c)
    # torus letters already sit left of e-letters in the normal form
    assert alg.straighten(Element.word((E(2), W((1, 0))))) == Element.word((W((1, 0)), E(2)), s.inverse())


def test_torus_conjugation_a2(algs):
    # w1 e2 w1^-1 = s e2, read back from the normal form
    alg = algs["A2"]
    x = Element.word((W((1, 0)), E(2), W((-1, 0))))
    assert alg.straighten(x) == Element.word((E(2),), s)


def test_reduce_examples(algs):
    alg = algs["A2"]
    ctx = alg.serre_context(4)
    x = Element.word((E(1), E(2)))
    assert ctx.reduce_plus(x) == x
    assert ctx.ideal_rank((2, 1)) == 1 and len(ctx.complement((2, 1))) == 2
    y = ctx.reduce_plus(Element.word((E(1), E(2), E(1))))
    assert all(w in ctx.complement((2, 1)) for w in y.words())
    assert ctx.reduce_plus(y) == y


@pytest.mark.parametrize("t", TYPES)
def test_every_relation_vanishes(algs, t):
    alg = algs[t]
    ctx = alg.serre_context(5)
    for label, rel in alg.relations():
        assert alg.canonical(rel, ctx).is_zero(), label


@pytest.mark.parametrize("t", ["A2", "B2", "G2"])
def test_phi_and_psi_respect_relations(algs, t):
    alg = algs[t]
    ctx = alg.serre_context(5)
    for label, rel in alg.relations():
        assert alg.canonical(alg.phi(rel), ctx).is_zero(), label
        assert alg.canonical(alg.psi(rel), ctx).is_zero(), label


def test_phi_examples(algs):
    alg = algs["B2"]
    assert alg.phi(Element.word((E(1),))) == Element.word((F(1),))
    assert alg.phi(Element.word((F(1),))) == Element.word((E(1),), (r * s) ** 2)
    assert alg.phi(Element.word((E(1),), r)) == Element.word((F(1),), s.inverse())
    with pytest.raises(ValueError):
        UrsAlgebra(cartan_type("A2"), 2, 3).phi(Element.word((E(1),)))


def test_psi_examples():
    assert psi(Element.word((E(1), E(2)))) == Element.word((F(2), F(1)))
    assert psi(Element.word((W((1, -1)),))) == Element.word((W((1, -1)),))


@given(elements(rank=2, max_len=4))
def test_psi_involution(x):
    assert psi(psi(x)) == x


@settings(max_examples=40)
@given(elements(rank=2, max_len=4))
def test_straighten_idempotent_and_strategy_free(x):
    alg = UrsAlgebra(cartan_type("B2"))
    nf = alg.straighten(x)
    assert all(is_normal_word(w) for w in nf.words())
    assert alg.straighten(nf) == nf
    assert alg.straighten(x, "rightmost") == nf


@settings(max_examples=40)
@given(elements(rank=2, max_len=3, max_terms=2), elements(rank=2, max_len=3, max_terms=2))
def test_straighten_multiplicative(x, y):
    alg = UrsAlgebra(cartan_type("A2"))
    assert alg.straighten(x * y) == alg.straighten(alg.straighten(x) * alg.straighten(y))


@settings(max_examples=30)
@given(st.lists(st.sampled_from([1, 2]), min_size=1, max_size=4), st.lists(st.sampled_from([1, 2]), max_size=4))
def test_reduce_is_linear_projection(u, v):
    alg = UrsAlgebra(cartan_type("A2"))
    ctx = alg.serre_context(4)
    x, y = alg.e_word(u), alg.e_word(v)
    rx = ctx.reduce_plus(x)
    assert ctx.reduce_plus(rx) == rx
    if alg.weight(x) == alg.weight(y):
        assert ctx.reduce_plus(x.scale(r) + y) == rx.scale(r) + ctx.reduce_plus(y)


def test_serre_elements_are_zero_everywhere(algs):
    for t, alg in algs.items():
        ctx = alg.serre_context(5)
        for i, j in alg.serre_pairs():
            assert ctx.reduce_plus(alg.serre_element("plus", i, j)).is_zero(), (t, i, j)
            assert ctx.reduce_minus(alg.serre_element("minus", i, j)).is_zero(), (t, i, j)


def test_serre_basis_dimension_is_parameter_free(algs):
    special = UrsAlgebra(cartan_type("G2"), Scalar.const(2), Scalar.const(7))
    a, b = algs["G2"].serre_context(5), special.serre_context(5)
    for beta in weights_of_height(2, 5):
        assert a.dim_plus(beta) == b.dim_plus(beta)


def test_e_words_sorted():
    words = e_words((2, 1))
    assert len(words) == 3 and words == sorted(words, key=lambda w: [g.arg for g in w])


def test_height_bounds(algs):
    with pytest.raises(HeightBoundError, match="maximum 7"):
        algs["A2"].serre_context(8)
    ctx = algs["A2"].serre_context(3)
    with pytest.raises(HeightBoundError):
        ctx.dim_plus((2, 2))
    with pytest.raises(ValueError):
        ctx.dim_plus((-1, 1))


@pytest.mark.parametrize("rv,sv", [(2, 2), (3, -3)])
def test_degenerate_parameters_rejected(rv, sv):
    with pytest.raises(ValueError, match="degenerate"):
        UrsAlgebra(cartan_type("A2"), rv, sv)
    with pytest.raises(ValueError):
        UrsAlgebra(cartan_type("A2"), 0, 1)


def test_unknown_strategy(algs):
    with pytest.raises(ValueError):
        algs["A2"].straighten(Element.word((E(1),)), "middle")


def test_qbinom_in_serre_coefficients(algs):
    alg = algs["G2"]
    S = alg.serre_element("plus", 1, 2)
    v = alg.v(1)
    got = S.terms[(E(1), E(1), E(1), E(2), E(1))]
    assert got == -qbinom(4, 1, v) * alg.c(1, 2, 1)
