from fractions import Fraction

import pytest

from qgroups.cartan import (
    build_cartan,
    datum_from_config,
    identity,
    mat_vec,
    standard_twist,
    vec_add,
)
from qgroups.errors import InvalidLattice, InvalidPhi, NotReduced


def F(x):
    return Fraction(x)


def test_a1_defaults():
    d = build_cartan("A1", "Q", 0)
    assert len(d.root_data.positive_roots) == 1
    assert d.d == (1,)
    assert d.gram == ((F(1) / 2,),)
    assert d.dual_basis == identity(1)  # M' = P


def test_a2_gram_from_solving():
    d = build_cartan("A2", "P", 0)
    assert d.gram == ((F(2) / 3, F(1) / 3), (F(1) / 3, F(2) / 3))
    w1 = (F(1), F(0))
    assert d.bilinear(w1, w1) == F(2) / 3


def test_bilinear_on_generators():
    for type_ in ("A1", "A2", "B2"):
        d = build_cartan(type_, "Q", 0)
        n = d.n
        omegas = identity(n)
        for i in range(n):
            for j in range(n):
                assert d.bilinear(d.simple_roots[i], omegas[j]) == (d.d[i] if i == j else 0)
                assert d.bilinear(d.simple_roots[i], d.simple_roots[j]) == d.d[i] * d.A[i][j]


def test_invalid_phi_rejected():
    # phi(alpha) outside Q in rank 1 is impossible; antisymmetry fails instead
    with pytest.raises(InvalidPhi):
        build_cartan("A1", "Q", ((1,),))
    # a non-integral scaling of a valid A2 twist breaks phi(Q) <= Q
    tw = [[x / 3 for x in row] for row in standard_twist("A2")]
    with pytest.raises(InvalidPhi):
        build_cartan("A2", "Q", tw)


def test_a2_convex_order():
    d = build_cartan("A2", "Q", 0, (1, 2, 1))
    assert d.root_data.roots_alpha == ((1, 0), (1, 1), (0, 1))


def test_b2_convex_order_and_lengths():
    d = build_cartan("B2", "Q", 0, (1, 2, 1, 2))
    assert d.root_data.roots_alpha == ((1, 0), (1, 1), (1, 2), (0, 1))
    assert sorted(d.root_data.d_alpha) == [1, 1, 2, 2]


def test_not_reduced_word():
    with pytest.raises(NotReduced):
        build_cartan("A2", "Q", 0, (1, 1, 2))
    with pytest.raises(NotReduced):
        build_cartan("B2", "Q", 0, (1, 2, 1, 1))


def test_duality_pairing_integrality():
    for type_ in ("A1", "A2", "B2"):
        for lat in ("P", "Q"):
            d = build_cartan(type_, lat, 0)
            n = d.n
            for i in range(n):
                mu = tuple(d.lattice_m[r][i] for r in range(n))
                for j in range(n):
                    nu = tuple(d.dual_basis[r][j] for r in range(n))
                    val = d.bilinear(mu, nu)
                    assert val.denominator == 1
                    if i != j:
                        assert val == 0


def test_dual_of_dual():
    for type_ in ("A1", "A2"):
        for lat in ("P", "Q"):
            d = build_cartan(type_, lat, 0)
            assert d.dual().dual() is d


def test_r_and_rbar_invert_exactly():
    for type_, tw in (("A2", standard_twist("A2")), ("B2", standard_twist("B2"))):
        d = build_cartan(type_, "Q", tw)
        ident = identity(d.n)
        for v in ident:
            assert d.apply_r(vec_add(v, d.apply_phi(v))) == v
            w = tuple(a - b for a, b in zip(v, d.apply_phi(v)))
            assert d.apply_rbar(w) == v


def test_tau_antisymmetry():
    for type_, tw in (("A2", standard_twist("A2")), ("B2", standard_twist("B2"))):
        d = build_cartan(type_, "Q", tw)
        for i in range(d.n):
            for j in range(d.n):
                assert d.bilinear(d.tau[i], d.simple_roots[j]) == -d.bilinear(
                    d.tau[j], d.simple_roots[i]
                )


def test_bracket_integrality_on_m():
    for type_ in ("A1", "A2", "B2"):
        for lat in ("P", "Q"):
            d = build_cartan(type_, lat, 0)
            for j in range(d.n):
                mu = tuple(d.lattice_m[r][j] for r in range(d.n))
                for i in range(d.n):
                    assert d.bracket(d.simple_roots[i], mu).denominator == 1


def test_config_round_trip():
    cfg = {"type": "A2", "lattice": "Q", "phi": ["2", "4", "-4", "-2"], "reduced_word": [1, 2, 1]}
    d = datum_from_config(cfg)
    assert d == build_cartan("A2", "Q", standard_twist("A2"))


def test_custom_lattice_requires_q_inside():
    with pytest.raises(InvalidLattice):
        build_cartan("A2", ((2, 0), (0, 2)), 0)  # alpha_1 not in span
