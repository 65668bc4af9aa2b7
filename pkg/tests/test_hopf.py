import pytest

from qgroups.cartan import build_cartan, standard_twist
from qgroups.errors import PresentationMismatch
from qgroups.hopf import TensorElement, antipode, check_hopf_axioms, coproduct, counit
from qgroups.pbw import AlgebraElement, presentation
from qgroups.qcoeff import QScalar


def test_coproduct_generators_a1():
    d = build_cartan("A1", "Q")
    P = presentation(d, "full")
    F = AlgebraElement.generator_f(P, 0)
    L = AlgebraElement.toral(P, (1,))
    Lm = AlgebraElement.toral(P, (-1,))
    one = AlgebraElement.one(P)
    # Delta(F) = F (x) L_(-alpha) + 1 (x) F at phi = 0
    assert coproduct(F) == TensorElement.of(F, Lm) + TensorElement.of(one, F)
    assert coproduct(L) == TensorElement.of(L, L)
    assert coproduct(one) == TensorElement.one(P)


def test_coproduct_morphism_and_four_terms():
    d = build_cartan("A1", "Q")
    P = presentation(d, "full")
    E = AlgebraElement.generator_e(P, 0)
    F = AlgebraElement.generator_f(P, 0)
    assert coproduct(E * F) == coproduct(E) * coproduct(F)
    assert len(coproduct(E * F).terms) == 4


def test_counit_values():
    d = build_cartan("A1", "Q")
    P = presentation(d, "full")
    E = AlgebraElement.generator_e(P, 0)
    F = AlgebraElement.generator_f(P, 0)
    L = AlgebraElement.toral(P, (3,))
    assert counit(F).is_zero()
    assert counit(L) == QScalar.from_int(1)
    assert counit(E * F + L) == QScalar.from_int(1)


def test_antipode_values():
    d = build_cartan("A1", "Q")
    P = presentation(d, "full")
    E = AlgebraElement.generator_e(P, 0)
    F = AlgebraElement.generator_f(P, 0)
    L = AlgebraElement.toral(P, (1,))
    Lm = AlgebraElement.toral(P, (-1,))
    assert antipode(L) == Lm
    assert antipode(F) == -(F * L)
    assert antipode(E) == -(Lm * E)
    assert antipode(AlgebraElement.one(P)) == AlgebraElement.one(P)
    # anti-morphism
    assert antipode(E * F) == antipode(F) * antipode(E)


def test_antipode_axiom_on_generator():
    d = build_cartan("A2", "Q")
    P = presentation(d, "full")
    E = AlgebraElement.generator_e(P, 0)
    lhs = coproduct(E).apply(antipode, lambda y: y).contract()
    assert lhs.is_zero()  # eps(E) = 0


def test_axiom_suites():
    for label, datum, kind in [
        ("A1", build_cartan("A1", "Q"), "full"),
        ("A1", build_cartan("A1", "Q"), "double"),
        ("A2", build_cartan("A2", "Q"), "full"),
        ("A2-twist", build_cartan("A2", "Q", standard_twist("A2")), "full"),
        ("A2-twist", build_cartan("A2", "Q", standard_twist("A2")), "double"),
        ("B2", build_cartan("B2", "Q"), "full"),
    ]:
        rep = check_hopf_axioms(datum, kind, bound=2, samples=6)
        assert rep["passed"], (label, kind, rep)


def test_weight_compatibility():
    from qgroups.pbw import weight_of

    d = build_cartan("A2", "Q")
    P = presentation(d, "full")
    x = AlgebraElement.generator_e(P, 0) * AlgebraElement.generator_e(P, 1)
    w = (1, 1)
    for (m1, m2), _ in coproduct(x).terms.items():
        w1 = weight_of(P, m1)
        w2 = weight_of(P, m2)
        assert tuple(a + b for a, b in zip(w1, w2)) == w


def test_dual_h_has_no_algebraic_coproduct():
    d = build_cartan("A1", "Q")
    P = presentation(d, "dual_h")
    with pytest.raises(PresentationMismatch):
        coproduct(AlgebraElement.generator_f(P, 0))
    with pytest.raises(PresentationMismatch):
        antipode(AlgebraElement.generator_f(P, 0))
    # the counit is still algebraic
    assert counit(AlgebraElement.toral(P, (2,))) == QScalar.from_int(1)
