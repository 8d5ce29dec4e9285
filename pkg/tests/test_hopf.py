import pytest
from hypothesis import given, settings

from rsquant.cartan import cartan_type
from rsquant.freealg import E, F, W, WP, Element, TensorElement
from rsquant.hopf import HopfMaps, generator_letters, words_upto
from rsquant.scalars import Scalar, var
from rsquant.urs import UrsAlgebra

from strategies import elements

r = var("r")


@pytest.fixture(scope="module", params=["A2", "B2"])
def hopf(request):
    return HopfMaps(UrsAlgebra(cartan_type(request.param)))


@pytest.fixture(scope="module")
def a2():
    return HopfMaps(UrsAlgebra(cartan_type("A2")))


def pure(a, b, c=1):
    return TensorElement({(a, b): Scalar.coerce(c)})


def test_generator_coproducts(a2):
    assert a2.coproduct(Element.word((E(1),))) == pure((E(1),), ()) + pure((W((1, 0)),), (E(1),))
    assert a2.coproduct(Element.word((F(2),))) == pure((), (F(2),)) + pure((F(2),), (WP((0, 1)),))
    mu = W((2, -1))
    assert a2.coproduct(Element.word((mu,))) == pure((mu,), (mu,))


def test_coproduct_of_e1e2_has_four_terms(a2):
    got = a2.coproduct(Element.word((E(1), E(2))))
    want = (pure((E(1), E(2)), ()) + pure((E(1), W((0, 1))), (E(2),))
            + pure((W((1, 0)), E(2)), (E(1),)) + pure((W((1, 1)),), (E(1), E(2))))
    assert got == want and len(got) == 4


def test_counit_examples(a2):
    assert a2.counit(Element.word((E(1), E(2)))).is_zero()
    assert a2.counit(Element.word((W((1, 2)), WP((0, -1))))).is_one()
    assert a2.counit(Element.scalar(3) + Element.word((E(1),), r)) == Scalar.const(3)


def test_antipode_examples(a2):
    alg = a2.alg
    assert a2.antipode(Element.word((E(1),))) == Element.word((W((-1, 0)), E(1)), -1)
    assert a2.antipode(Element.word((F(1),))) == Element.word((F(1), WP((-1, 0))), -1)
    assert a2.antipode(Element.word((W((2, 1)),))) == Element.word((W((-2, -1)),))
    x = a2.antipode(Element.word((E(1), E(2))))
    assert x == Element.word((W((0, -1)), E(2), W((-1, 0)), E(1)))
    assert alg.straighten(x) == alg.straighten(Element.word((W((-1, -1)), E(2), E(1)), alg.conj("e-by-w", 2, (-1, 0)).inverse()))


def test_axioms_on_short_words(hopf):
    ctx = hopf.alg.serre_context(4)
    for w in words_upto(generator_letters(hopf.alg), 2):
        x = Element.word(w)
        assert hopf.check_coassociative(x), w
        assert hopf.check_counit(x), w
        assert hopf.check_antipode(x, ctx), w


@settings(max_examples=30)
@given(elements(rank=2, max_len=3))
def test_coassociative_and_counital_random(x):
    h = HopfMaps(UrsAlgebra(cartan_type("B2")))
    assert h.check_coassociative(x)
    assert h.check_counit(x)


def test_coproduct_respects_relations(hopf):
    ctx = hopf.alg.serre_context(5)
    for label, rel in hopf.alg.relations():
        assert hopf.check_relation(rel, ctx).is_zero(), label


def test_negative_control_commutator(a2):
    # dropping the torus term of the e1/f1 relation must leave a residue
    x = Element.word((E(1), F(1))) - Element.word((F(1), E(1)))
    assert not a2.check_relation(x).is_zero()


def test_antipode_on_serre_element(a2):
    alg = a2.alg
    S = alg.serre_element("plus", 1, 2)
    assert alg.canonical(a2.antipode(S), alg.serre_context(4)).is_zero()


def test_wrong_antipode_is_caught(a2):
    class Broken(HopfMaps):
        def antipode(self, x):
            return x.scale(-1)

    bad = Broken(a2.alg)
    assert not bad.check_antipode(Element.word((E(1),)))
    assert bad.check_coassociative(Element.word((E(1),)))
