from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bianchi_periods.quadfield import (
    DomainError,
    QuadElem,
    QuadInt,
    canonical_associate,
    coprime,
    divides,
    divisors,
    euclid_gcd,
    factor,
    format_elem,
    get_field,
    ideals_up_to,
    is_unit,
    nearest_int,
    parse_elem,
    phi_tilde,
    phi_tilde_formula,
    residues,
    sigma_tilde,
)

from conftest import FIELD_CODES, field_and_elems, fields, rationals

F1, F2, F3, F7, F11 = (get_field(d) for d in (1, 2, 3, 7, 11))
half = Fraction(1, 2)


def test_field_constants():
    assert [(f.t, f.m) for f in (F1, F2, F3, F7, F11)] == [(0, 1), (0, 2), (-1, 1), (1, 2), (1, 3)]
    assert [len(f.units) for f in (F1, F2, F3, F7, F11)] == [4, 2, 6, 2, 2]


def test_units_and_delta(field):
    assert all(u.norm() == 1 for u in field.units)
    assert field.delta * field.delta == -field.d
    # omega is a root of X^2 - tX + m
    w = field.omega
    assert w * w - field.t * w + field.m == 0


def test_unsupported_field():
    with pytest.raises(DomainError):
        get_field(5)


def test_arith_examples():
    assert F1(1, 1) * F1(1, -1) == 2
    assert F3.omega * F3.omega == F3(-1, -1)
    assert F7(3, 4) + 0 == F7(3, 4)
    assert F3.omega.conj() == F3(-1, -1)
    assert F1.omega.conj() == -F1.omega
    assert F2(half).conj() == half
    assert F1(1, 1).norm() == 2
    assert F11.omega.norm() == 3
    assert F2.zero.norm() == 0


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        F1(1, 1) / F1.zero


def test_integral_type_dispatch():
    assert isinstance(F1(2, 3), QuadInt)
    assert not isinstance(F1(half, 3), QuadInt)
    assert isinstance(F1(half, 0) * 2, QuadInt)
    with pytest.raises(DomainError):
        QuadInt(F1, half, 0)


def test_rationals_in_lowest_terms():
    v = F2(Fraction(4, 6), Fraction(-3, 9))
    assert v.x == Fraction(2, 3) and v.y == Fraction(-1, 3)
    assert v.x.denominator > 0


@given(field_and_elems(count=2))
def test_norm_multiplicative(case):
    f, a, b = case
    assert (a * b).norm() == a.norm() * b.norm()
    assert a.norm() == a * a.conj()


@given(field_and_elems(count=2))
def test_conj_is_ring_involution(case):
    f, a, b = case
    assert (a * b).conj() == a.conj() * b.conj()
    assert (a + b).conj() == a.conj() + b.conj()
    assert a.conj().conj() == a


@given(field_and_elems(count=2, nonzero=True))
def test_division_inverts_multiplication(case):
    f, a, b = case
    assert (a / b) * b == a
    assert a * a.inverse() == 1


# -- formatting ------------------------------------------------------------------


@given(field_and_elems())
def test_format_parse_roundtrip(case):
    f, a = case
    assert parse_elem(format_elem(a), f) == a


def test_parse_examples():
    assert parse_elem(" 1/2 + 1/2*w ", F1) == F1(half, half)
    assert parse_elem("-3*w", F2) == F2(0, -3)
    assert parse_elem("w", F7) == F7.omega
    assert parse_elem("-2-5/3*w", F11) == F11(-2, Fraction(-5, 3))
    assert format_elem(F1(1, -1)) == "1-1*w"
    assert format_elem(F1(0, 2)) == "2*w"


@pytest.mark.parametrize("text", ["", "1+", "x", "1/0", "w+1", "1.5", "2*w*w", "1+w+w"])
def test_parse_rejects(text):
    with pytest.raises(DomainError):
        parse_elem(text, F1)


# -- rounding --------------------------------------------------------------------


def brute_nearest(kappa: QuadElem) -> QuadInt:
    """Minimise (distance, real part, w-coordinate) over a wide window."""
    f = kappa.field
    cx, cy = int(kappa.x), int(kappa.y)
    cands = [QuadInt(f, a, b) for a in range(cx - 4, cx + 5) for b in range(cy - 4, cy + 5)]
    return min(cands, key=lambda v: ((kappa - v).norm(), v.real_part(), v.y))


def test_nearest_examples():
    assert nearest_int(F1(half, half)) == 0
    assert nearest_int(F1(Fraction(3, 2), Fraction(1, 5))) == 1
    assert nearest_int(F3(half)) == 0
    assert nearest_int(Fraction(7, 3), F2) == 2


@given(field_and_elems())
def test_nearest_matches_brute_force(case):
    f, kappa = case
    beta = nearest_int(kappa)
    assert beta == brute_nearest(kappa)
    assert (kappa - beta).norm() < 1


@pytest.mark.parametrize("d", FIELD_CODES)
def test_remainder_below_one_on_grid(d):
    f = get_field(d)
    for q in (2, 3, 4, 6):
        for x, y in itertools.product(range(-q, q + 1), repeat=2):
            kappa = f(Fraction(x, q), Fraction(y, q))
            assert (kappa - nearest_int(kappa)).norm() < 1


# -- gcd, associates, divisors -----------------------------------------------------


def test_gcd_examples():
    assert euclid_gcd(F1(1, 1), F1(2)) == F1(1, 1)
    assert euclid_gcd(F1(2), F1(3)) == 1
    assert euclid_gcd(F7(3, 2), F7.zero) == canonical_associate(F7(3, 2))
    with pytest.raises(DomainError):
        euclid_gcd(F1.zero, F1.zero)


@given(field_and_elems(count=2, integral=True, nonzero=True))
def test_gcd_divides_both_and_matches_coprime(case):
    f, a, b = case
    g = euclid_gcd(a, b)
    assert divides(g, a) and divides(g, b)
    assert coprime(a, b) == is_unit(g)


def test_canonical_associate_examples():
    assert canonical_associate(F1(-1)) == 1
    assert canonical_associate(F1.omega) == 1
    assert canonical_associate(-F2.omega) == F2.omega
    with pytest.raises(DomainError):
        canonical_associate(F1.zero)


@given(field_and_elems(integral=True, nonzero=True))
def test_canonical_associate_idempotent_and_unit_invariant(case):
    f, a = case
    c = canonical_associate(a)
    assert canonical_associate(c) == c
    assert all(canonical_associate(u * a) == c for u in f.units)
    assert divides(c, a) and divides(a, c)


def test_divisor_examples():
    assert divisors(F1(2)) == (F1(1), F1(1, 1), F1(2))
    assert divisors(F3(2)) == (F3(1), F3(2))
    assert all(divisors(u) == (F7.one,) for u in F7.units)
    with pytest.raises(DomainError):
        divisors(F1.zero)


@given(field_and_elems(integral=True, nonzero=True))
def test_divisors_complete(case):
    f, n = case
    divs = divisors(n)
    assert all(divides(d, n) for d in divs)
    assert len(set(divs)) == len(divs)
    assert divs[0] == 1 and canonical_associate(n) in divs
    assert all(divisors(u * n) == divs for u in f.units)
    # brute force: any canonical element of norm dividing N(n) that divides n is listed
    norm = int(n.norm())
    brute = {d for d in ideals_up_to(f, norm) if norm % int(d.norm()) == 0 and divides(d, n)}
    assert brute == set(divs)


@given(field_and_elems(integral=True, nonzero=True))
def test_factor_reconstructs(case):
    f, n = case
    prod = f.one
    for pi, e in factor(n):
        prod = prod * pi**e
    assert canonical_associate(prod) == canonical_associate(n)


# -- residues and arithmetic functions -----------------------------------------------


def test_residue_examples():
    assert len(residues(F1(1, 1))) == 2
    assert len(residues(F1(2), True)) == 2
    assert residues(F3.units[1]) == (F3.zero,)
    assert phi_tilde(F1(1, 1)) == 1
    assert phi_tilde(F1(2)) == 2
    assert phi_tilde(F11.one) == 1
    with pytest.raises(DomainError):
        residues(F1.zero)


@given(field_and_elems(integral=True, nonzero=True))
def test_residues_complete_system(case):
    f, d = case
    if d.norm() > 60:
        d = f(d.x % 5 + 1, d.y % 3)
    reps = residues(d)
    assert len(reps) == d.norm()
    assert not any(divides(d, a - b) for a, b in itertools.combinations(reps, 2))
    assert phi_tilde(d) == phi_tilde_formula(d)


def test_sigma_examples():
    assert sigma_tilde(2, F1(2)) == 7
    assert sigma_tilde(4, F1(1, 1)) == 5
    assert sigma_tilde(6, F7.one) == 1
    with pytest.raises(DomainError):
        sigma_tilde(3, F1(2))


@pytest.mark.parametrize("d", FIELD_CODES)
def test_phi_sums_to_norm(d):
    f = get_field(d)
    for n in ideals_up_to(f, 60):
        assert sum(phi_tilde(e) for e in divisors(n)) == n.norm()


@given(fields, st.integers(min_value=1, max_value=40))
def test_ideals_up_to_are_canonical_and_sorted(f, bound):
    ideals = ideals_up_to(f, bound)
    assert all(canonical_associate(n) == n and n.norm() <= bound for n in ideals)
    assert ideals == sorted(ideals, key=QuadElem.sort_key)


def test_ideal_counts_against_lattice_count():
    # independent count: number of elements of norm <= B divided by the unit count
    for f in (F1, F2, F3, F7, F11):
        bound = 50
        total = sum(
            1
            for a in range(-20, 21)
            for b in range(-20, 21)
            if 0 < QuadInt(f, a, b).norm() <= bound
        )
        assert len(ideals_up_to(f, bound)) == total // len(f.units)


@given(rationals)
def test_rational_embedding(r):
    assert F2(r).conj() == F2(r) and F2(r).norm() == r * r
