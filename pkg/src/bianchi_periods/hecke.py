"""Hecke matrices A(n) on period coordinates and exact eigenspaces inside W_{k,k}.

Row (p, q) of A(n) is

    sum_{d | n} eps(n/d; p, q) * t_{p,q}(d)

where eps(m; p, q) sums e1^p e1b^q e2^(k-p) e2b^(k-q) over factorisations
e1*e2 = m and t_{p,q}(d) combines the cusp matrices M(b/d) over residues b
coprime to d.  Generators are the canonical associates from quadfield; for
D in {1, 3} individual entries depend on that choice, the r_{0,0} - r_{k,k}
identity does not.

``weights="slash"`` swaps the binomial C(k-i, p-i) in t_{p,q}(d) for C(p, i),
the coefficient produced by slashing with ((a, b), (0, d)) in period
coordinates.  It is a diagnostic: that variant agrees with the modular-symbol
operator on W and preserves W, while the closed form does so only for k = 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Sequence

from .linalg import KMatrix, SubspaceBasis, charpoly, kernel, poly_at_matrix, solve_coordinates
from .hurwitz import Mat2
from .periods import cusp_blocks, cusp_matrix, period_scaling
from .polyspace import coboundary_vector, slash_matrix
from .quadfield import (
    DomainError,
    Field,
    QuadElem,
    QuadInt,
    canonical_associate,
    divisors,
    exact_div,
    residues,
    sigma_tilde,
)
from .relations import build_relations, quotient_basis

__all__ = [
    "HeckeMatrix",
    "epsilon_factor",
    "epsilon_vector",
    "t_block",
    "hecke_matrix",
    "charpoly",
    "poly_at_matrix",
    "w_period_basis",
    "eigenspace_in_w",
    "joint_eigenspace_in_w",
    "first_row_difference",
    "w_stability",
    "multiplicativity_on_quotient",
    "modular_symbol_hecke",
    "WEIGHT_RULES",
]

WEIGHT_RULES = ("closed_form", "slash")


def _as_int(field: Field, n) -> QuadInt:
    if isinstance(n, QuadInt):
        return n
    if isinstance(n, int):
        return QuadInt(field, n, 0)
    raise DomainError(f"{n!r} is not an algebraic integer")


def _factor_pairs(m: QuadInt) -> list[tuple[QuadInt, QuadInt]]:
    return [(e1, exact_div(m, e1)) for e1 in divisors(m)]


def epsilon_factor(m: QuadInt, p: int, q: int, k: int) -> QuadElem:
    """sum over e1 | m (canonical), e2 = m/e1, of e1^p e1b^q e2^(k-p) e2b^(k-q)."""
    if m.is_zero():
        raise DomainError("epsilon factor of zero")
    total = m.field.zero
    for e1, e2 in _factor_pairs(m):
        total = total + e1**p * e1.conj() ** q * e2 ** (k - p) * e2.conj() ** (k - q)
    return total


def epsilon_vector(m: QuadInt, k: int) -> KMatrix:
    """All eps(m; p, q) as a (k+1)^2 x 1 column, built as sums of f kron conj(f)."""
    field = m.field
    n = (k + 1) ** 2
    total = KMatrix.zeros(field, n, 1)
    for e1, e2 in _factor_pairs(m):
        f = KMatrix.from_rows(field, [[e1**p * e2 ** (k - p)] for p in range(k + 1)])
        total = total + f.kron(f.conj())
    return total


def _check_rule(weights: str) -> None:
    if weights not in WEIGHT_RULES:
        raise DomainError(f"unknown weight rule {weights!r}; expected one of {WEIGHT_RULES}")


def _weight_block(b: QuadInt, d: QuadInt, k: int, weights: str = "closed_form") -> KMatrix:
    """W[p][i] = C(k-i, p-i) b^(p-i) d^i for i <= p (C(p, i) under the slash rule)."""
    field = d.field
    rows = [[field.zero] * (k + 1) for _ in range(k + 1)]
    for p in range(k + 1):
        for i in range(p + 1):
            c = comb(k - i, p - i) if weights == "closed_form" else comb(p, i)
            rows[p][i] = c * b ** (p - i) * d**i
    return KMatrix.from_rows(field, rows)


@lru_cache(maxsize=None)
def t_block(d: QuadInt, k: int, weights: str = "closed_form") -> KMatrix:
    """Matrix sending base periods to (t_{p,q}(d))_{p,q}."""
    _check_rule(weights)
    if d.is_zero():
        raise DomainError("t_block of zero")
    field = d.field
    n = (k + 1) ** 2
    total = KMatrix.zeros(field, n, n)
    for b in residues(d, True):
        weight = _weight_block(b, d, k, weights)
        for block in cusp_blocks(b / d, k):
            x = weight @ block
            total = total + x.kron(x.conj())
    return total


@dataclass(frozen=True)
class HeckeMatrix:
    field: Field
    k: int
    n: QuadInt
    matrix: KMatrix
    representative_log: dict

    def to_json(self) -> dict:
        return {
            "d": self.field.d,
            "k": self.k,
            "n": str(self.n),
            "matrix": self.matrix.to_strings(),
            "representative_log": self.representative_log,
        }


@lru_cache(maxsize=None)
def _hecke(n: QuadInt, k: int, weights: str) -> HeckeMatrix:
    field = n.field
    size = (k + 1) ** 2
    total = KMatrix.zeros(field, size, size)
    log_divisors = []
    for d in divisors(n):
        eps = epsilon_vector(exact_div(n, d), k)
        scaled = KMatrix.diag(field, eps.column(0)) @ t_block(d, k, weights)
        total = total + scaled
        log_divisors.append(
            {
                "d": str(d),
                "residues": [str(b) for b in residues(d, True)],
                "factorizations": [[str(e1), str(e2)] for e1, e2 in _factor_pairs(exact_div(n, d))],
            }
        )
    log = {
        "generator_rule": "canonical associate, argument in [0, 2pi/|units|)",
        "weights": weights,
        "divisors": log_divisors,
    }
    return HeckeMatrix(field, k, n, total, log)


def hecke_matrix(n, field: Field, k: int, weights: str = "closed_form") -> HeckeMatrix:
    """A(n) with r(T_n F) = A(n) r(F); n is replaced by its canonical associate."""
    _check_rule(weights)
    n = _as_int(field, n)
    if n.is_zero():
        raise DomainError("Hecke operator for the zero ideal")
    if k < 0:
        raise DomainError("k must be non-negative")
    return _hecke(canonical_associate(n), k, weights)


def first_row_difference(mat: KMatrix, k: int, sign: int = -1) -> QuadElem:
    """First component of mat @ (1, 0, ..., 0, sign)."""
    return mat[0, 0] + sign * mat[0, (k + 1) ** 2 - 1]


# -- W in period coordinates and eigenspaces -----------------------------------


@lru_cache(maxsize=None)
def w_period_basis(field: Field, k: int) -> SubspaceBasis:
    """W_{k,k} pulled back to period coordinates (v with C(k,p)C(k,q) v_{p,q} in W)."""
    reduced = kernel(_relation_map_periods(field, k))
    cob = coboundary_vector(field, k)
    rest, _ = quotient_basis(field, reduced.vectors, cob)
    inside = reduced.contains(cob, field)
    return SubspaceBasis(reduced.ambient_dim, reduced.vectors, inside, rest)


@lru_cache(maxsize=None)
def _relation_map_periods(field: Field, k: int) -> KMatrix:
    return build_relations(field, k).stacked_map @ period_scaling(field, k)


def joint_eigenspace_in_w(pairs: Sequence[tuple], field: Field, k: int) -> SubspaceBasis:
    """Basis of W_{k,k} ∩ Ker(A(n_i) - lambda_i I) over all pairs, with W-tilde coordinates."""
    size = (k + 1) ** 2
    ident = KMatrix.identity(field, size)
    blocks = [_relation_map_periods(field, k)]
    for n, lam in pairs:
        if not isinstance(lam, QuadElem):
            lam = field(lam)
        blocks.append(hecke_matrix(n, field, k).matrix - ident.scale(lam))
    space = kernel(KMatrix.vstack(blocks))
    cob = coboundary_vector(field, k)
    w = w_period_basis(field, k)
    if all(v.is_zero() for v in cob):
        basis = list(w.quotient)
    else:
        basis = [cob, *w.quotient]
    coords = []
    for v in space.vectors:
        full = solve_coordinates(field, basis, v)
        coords.append(full if len(basis) == len(w.quotient) else full[1:])
    return SubspaceBasis(space.ambient_dim, space.vectors, w.contains_coboundary, w.quotient, tuple(coords))


def eigenspace_in_w(n, lam, field: Field, k: int) -> SubspaceBasis:
    return joint_eigenspace_in_w([(n, lam)], field, k)


# -- diagnostics ------------------------------------------------------------------


def _maps_into(mat: KMatrix, source: SubspaceBasis, target: SubspaceBasis, field: Field) -> bool:
    return all(target.contains(mat.apply(v), field) for v in source.vectors)


def w_stability(n, field: Field, k: int, weights: str = "closed_form") -> dict[str, bool]:
    """Whether A(n) and its transpose map W (period coordinates) into W + <coboundary>."""
    a = hecke_matrix(n, field, k, weights).matrix
    w = w_period_basis(field, k)
    cob = coboundary_vector(field, k)
    target = SubspaceBasis(w.ambient_dim, w.vectors + (cob,))
    return {
        "A": _maps_into(a, w, target, field),
        "A_transpose": _maps_into(a.T, w, target, field),
    }


def multiplicativity_on_quotient(n1, n2, field: Field, k: int) -> bool:
    """Whether A(n1 n2) - A(n1) A(n2) sends W into the coboundary line."""
    n1 = _as_int(field, n1)
    n2 = _as_int(field, n2)
    diff = hecke_matrix(n1 * n2, field, k).matrix - (
        hecke_matrix(n1, field, k).matrix @ hecke_matrix(n2, field, k).matrix
    )
    w = w_period_basis(field, k)
    line = SubspaceBasis(w.ambient_dim, (coboundary_vector(field, k),))
    return all(line.contains(diff.apply(v), field) for v in w.vectors)


def first_row_identity_holds(n, field: Field, k: int) -> bool:
    """r_{0,0} minus r_{k,k} coefficient of row (0, 0) equals sigma_{2k+2}(n)."""
    mat = hecke_matrix(n, field, k).matrix
    return first_row_difference(mat, k) == sigma_tilde(2 * k + 2, _as_int(field, n))


def modular_symbol_hecke(n, field: Field, k: int) -> KMatrix:
    """T_n on period coordinates straight from the slash action.

    sum over d | n and all b mod d of B^-1 slash((n/d, b), (0, d)) B M(b/d),
    with B the binomial scaling.  Independent of the closed form; it maps W
    into W because each summand is a modular-symbol push-forward.
    """
    n = canonical_associate(_as_int(field, n))
    size = (k + 1) ** 2
    scale = period_scaling(field, k)
    unscale = KMatrix.diag(field, [scale[i, i].inverse() for i in range(size)])
    total = KMatrix.zeros(field, size, size)
    for d in divisors(n):
        a = exact_div(n, d)
        for b in residues(d):
            gamma = Mat2(a, b, field.zero, d)
            total = total + unscale @ slash_matrix(gamma, k) @ scale @ cusp_matrix(b / d, k)
    return total


def agree_on_w(first: KMatrix, second: KMatrix, field: Field, k: int) -> bool:
    """Whether two operators coincide on W modulo the coboundary line."""
    w = w_period_basis(field, k)
    line = SubspaceBasis(w.ambient_dim, (coboundary_vector(field, k),))
    diff = first - second
    return all(line.contains(diff.apply(v), field) for v in w.vectors)
