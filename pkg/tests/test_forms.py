from fractions import Fraction

import pytest

from qgroups.cartan import build_cartan
from qgroups.errors import NotInForm
from qgroups.forms import (
    FormBasisMonomial,
    duality_gram_check,
    filtration_degree,
    form_coordinates,
    function_form_membership,
    materialize,
    membership,
)
from qgroups.pair import drt_pair
from qgroups.pbw import AlgebraElement, presentation
from qgroups.qcoeff import LaurentPoly, QScalar, q_factorial


def q_minus_1(d=1):
    return QScalar.from_laurent(LaurentPoly({d: Fraction(1), 0: Fraction(-1)}))


def test_materialize_divided_power():
    d = build_cartan("A1", "Q")
    P = presentation(d, "full")
    F = AlgebraElement.generator_f(P, 0)
    m = FormBasisMonomial("restricted", (0,), (0,), (2,))
    assert materialize(m, P) == F * F * QScalar.from_laurent(q_factorial(2, 1)).inv()


def test_materialize_toral_binomial():
    d = build_cartan("A1", "Q")
    P = presentation(d, "full")
    L = AlgebraElement.toral(P, (1,))
    m = FormBasisMonomial("restricted", (0,), (1,), (0,))
    assert materialize(m, P) == (L - AlgebraElement.one(P)) * q_minus_1().inv()


def test_materialize_dkp_rescale():
    d = build_cartan("B2", "Q")
    P = presentation(d, "full")
    # Fbar for the long simple root uses q^2 - q^-2
    from qgroups.pbw import simple_root_index

    r = simple_root_index(d, 0)
    m = FormBasisMonomial("dkp", (0, 0, 0, 0), (0, 0), tuple(1 if k == r else 0 for k in range(4)))
    F = AlgebraElement.generator_f(P, 0)
    assert materialize(m, P) == (QScalar.q_power(2) - QScalar.q_power(-2)) * F


def test_membership_f_squared():
    d = build_cartan("A1", "Q")
    P = presentation(d, "full")
    F = AlgebraElement.generator_f(P, 0)
    rep = membership(F * F, "restricted")
    assert rep.member
    key = FormBasisMonomial("restricted", (0,), (0,), (2,))
    assert rep.coordinates[key] == QScalar.from_laurent(q_factorial(2, 1))


def test_membership_dkp_witness():
    d = build_cartan("A1", "Q")
    P = presentation(d, "full")
    F = AlgebraElement.generator_f(P, 0)
    rep = membership(F, "dkp")
    assert not rep.member
    assert rep.witnesses[0][1] == (QScalar.q_power(1) - QScalar.q_power(-1)).inv()
    assert rep.to_json()["member"] is False


def test_membership_toral_basis_monomial():
    d = build_cartan("A1", "Q")
    P = presentation(d, "full")
    m = FormBasisMonomial("restricted", (0,), (2,), (0,))
    rep = membership(materialize(m, P), "restricted")
    assert rep.member and rep.coordinates == {m: QScalar.from_int(1)}


def test_toral_round_trip_a2():
    d = build_cartan("A2", "Q")
    P = presentation(d, "full")
    x = AlgebraElement.toral(P, (2, -1)) + AlgebraElement.toral(P, (-1, 3)) * QScalar.q_power(2)
    coords = form_coordinates(x, "restricted")
    rebuilt = AlgebraElement.zero(P)
    for mono, c in coords.items():
        rebuilt = rebuilt + c * materialize(mono, P)
    assert rebuilt == x


def test_form_closure_products():
    # products of small form-basis monomials stay in the form
    d = build_cartan("A2", "Q")
    P = presentation(d, "full")
    monos = [
        FormBasisMonomial("restricted", (1, 0, 0), (0, 0), (0, 0, 0)),
        FormBasisMonomial("restricted", (0, 0, 0), (1, 0), (0, 0, 1)),
        FormBasisMonomial("restricted", (0, 0, 0), (0, 0), (2, 0, 0)),
    ]
    for m1 in monos:
        for m2 in monos:
            assert membership(materialize(m1, P) * materialize(m2, P), "restricted").member
    dkp = [
        FormBasisMonomial("dkp", (1, 0, 0), (0, -1), (0, 0, 0)),
        FormBasisMonomial("dkp", (0, 0, 0), (1, 0), (0, 1, 0)),
    ]
    for m1 in dkp:
        for m2 in dkp:
            assert membership(materialize(m1, P) * materialize(m2, P), "dkp").member


def test_coproduct_closure_desk_scale():
    # Delta of each form generator expands over the tensor square of the form
    # basis with Laurent coefficients
    from qgroups.forms import tensor_form_coordinates
    from qgroups.hopf import coproduct

    d = build_cartan("A1", "Q")
    P = presentation(d, "full")
    gens = [
        FormBasisMonomial("restricted", (1,), (0,), (0,)),
        FormBasisMonomial("restricted", (0,), (1,), (0,)),
        FormBasisMonomial("restricted", (0,), (0,), (2,)),
        FormBasisMonomial("dkp", (1,), (0,), (0,)),
        FormBasisMonomial("dkp", (0,), (-1,), (1,)),
    ]
    for g in gens:
        coords = tensor_form_coordinates(coproduct(materialize(g, P)), g.form)
        assert all(v.is_laurent() for v in coords.values()), g


def test_filtration_degrees():
    d = build_cartan("A1", "Q")
    P = presentation(d, "full")
    E = AlgebraElement.generator_e(P, 0)
    F = AlgebraElement.generator_f(P, 0)
    assert filtration_degree(AlgebraElement.one(P), "restricted") == 0
    assert filtration_degree(F, "restricted") == 1
    x = E * E * materialize(FormBasisMonomial("restricted", (0,), (1,), (0,)), P)
    assert filtration_degree(x, "restricted") == 3
    with pytest.raises(NotInForm):
        filtration_degree(F, "dkp")


def test_duality_gram_checks():
    for t in ("A1", "A2"):
        assert duality_gram_check(build_cartan(t, "Q"), 2)["passed"]


def test_duality_generator_value():
    # <Fbar_i, E_j^(1)> = -delta q^(-(r tau|tau)) is Laurent; phi = 0 gives -1
    d = build_cartan("A1", "Q")
    pm = presentation(d, "borel_minus")
    pp = presentation(d.dual(), "borel_plus")
    fbar = materialize(FormBasisMonomial("dkp", (0,), (0,), (1,)), pm)
    e1 = materialize(FormBasisMonomial("restricted", (1,), (0,), (0,)), pp)
    assert drt_pair("drt_pi", fbar, e1) == QScalar.from_int(-1)


def test_function_form_membership():
    d = build_cartan("A1", "Q")
    PH = presentation(d, "dual_h")
    # L^phi_(-mu) with mu in M_+ is integer valued on the restricted form
    rep = function_form_membership(AlgebraElement.toral(PH, (-1,)), "F-restricted", 2)
    assert rep.member
    # a 1/(q - q^-1) multiple of the identity functional fails on 1
    bad = (QScalar.q_power(1) - QScalar.q_power(-1)).inv() * AlgebraElement.one(PH)
    rep = function_form_membership(bad, "F-restricted", 1)
    assert not rep.member
    # E^phi against the DKP form is integer valued ((q-q^-1)-rescaled F side)
    rep = function_form_membership(AlgebraElement.generator_e(PH, 0), "F-dkp", 2)
    assert rep.member
