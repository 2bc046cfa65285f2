from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given

from bianchi_periods.hurwitz import (
    Mat2,
    cusp,
    expand,
    expansion_defects,
    generator,
    generators,
    same_cusp,
)
from bianchi_periods.quadfield import DomainError, get_field, ideals_up_to, residues

from conftest import FIELD_CODES, field_and_elems

F1 = get_field(1)
half = Fraction(1, 2)


def test_expand_zero_and_integers(field):
    cf = expand(field.zero)
    assert cf.betas == (0,) and cf.matrices == (Mat2.identity(field),)
    beta = field(3, -2)
    cf = expand(beta)
    assert cf.betas == (beta,) and cf.matrices == (Mat2.of(field, 1, beta, 0, 1),)


def test_expand_half_plus_half_w():
    cf = expand(F1(half, half))
    assert cf.betas == (F1.zero, F1(1, -1))
    mu, nu = cf.convergent(1)
    assert mu / nu == F1(half, half)
    assert cf.matrices[1] == Mat2.of(F1, 0, 1, -1, F1(1, -1))


def test_expand_needs_field_for_rationals():
    with pytest.raises(TypeError):
        expand(Fraction(1, 3))
    assert expand(Fraction(1, 3), F1).kappa == F1(Fraction(1, 3))


@given(field_and_elems())
def test_expansion_invariants(case):
    f, kappa = case
    cf = expand(kappa)
    assert expansion_defects(cf) == []
    # consecutive geodesics chain: g_n(inf) = g_{n-1}(0)
    for prev, cur in zip(cf.matrices, cf.matrices[1:]):
        assert same_cusp(cur.act(cusp(None, f)), prev.act(cusp(f.zero, f)))


@pytest.mark.parametrize("d", FIELD_CODES)
def test_expansion_length_bounded_by_denominator_norm(d):
    f = get_field(d)
    for nu in ideals_up_to(f, 40):
        for mu in residues(nu, True):
            assert expand(mu / nu).length <= max(1, nu.norm())


def test_expansion_defects_flags_tampering():
    cf = expand(F1(half, half))
    bad = type(cf)(cf.kappa, cf.betas, cf.convergents, (cf.matrices[0], Mat2.of(F1, 1, 1, 1, 2)))
    assert expansion_defects(bad)


def test_generators(field):
    gens = generators(field)
    assert all(g.det() == 1 and g.is_integral for g in gens.values())
    assert gens["U"] == Mat2.of(field, 1, -1, 1, 0)
    assert gens["S"] @ gens["S"] == -gens["I"]
    assert gens["U"] ** 3 == -gens["I"]
    assert ("L" in gens) == (field.d in (1, 3))
    assert ("E" in gens) == (field.d == 11)


def test_generator_values():
    assert generator(F1, "L") == Mat2.of(F1, F1.omega, 0, 0, -F1.omega)
    f3 = get_field(3)
    assert generator(f3, "L") == Mat2.of(f3, f3.omega**2, 0, 0, f3.omega)
    f11 = get_field(11)
    tw, s, t = (generator(f11, n) for n in ("Tw", "S", "T"))
    assert generator(f11, "E") == tw.inverse() @ s @ tw @ s @ t


@pytest.mark.parametrize("d,name", [(2, "L"), (7, "L"), (11, "L"), (1, "E"), (7, "E"), (3, "X")])
def test_unavailable_generators(d, name):
    with pytest.raises(DomainError):
        generator(get_field(d), name)


@given(field_and_elems(count=4, integral=True))
def test_mat2_group_laws(case):
    f, a, b, c, d = case
    g = Mat2(a, b, c, d)
    if g.det().is_zero():
        return
    assert g @ g.inverse() == Mat2.identity(f)
    h = generator(f, "U")
    assert (g @ h).det() == g.det()
    assert g ** -2 == (g.inverse()) @ (g.inverse())
