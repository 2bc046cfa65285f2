"""Period coordinates as exact matrices on the formal base periods r_{i,j}(0, F).

Every matrix here is (k+1)^2 square and indexed by idx(p, q) = p*(k+1) + q.
All of them separate as kron(X, conj(X)) for a (k+1)x(k+1) block X, because
the X, Y and Xb, Yb variables transform independently; the helpers below build
the block and take the Kronecker product.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb
from typing import Sequence

from .hurwitz import Mat2, expand
from .linalg import KMatrix
from .quadfield import DomainError, Field, QuadElem
from .polyspace import PolyKK


def _sep(block: KMatrix) -> KMatrix:
    return block.kron(block.conj())


def transport_block(gamma: Mat2, k: int) -> KMatrix:
    """E with E[p][i] = (-1)^(p+i) sum_u C(p,u) C(k-p,i-u) a^u b^(p-u) c^(i-u) d^(k-p-i+u)."""
    field = gamma.field
    a, b, c, d = gamma.a, gamma.b, gamma.c, gamma.d
    apow = [a**e for e in range(k + 1)]
    bpow = [b**e for e in range(k + 1)]
    cpow = [c**e for e in range(k + 1)]
    dpow = [d**e for e in range(k + 1)]
    rows = []
    for p in range(k + 1):
        row = []
        for i in range(k + 1):
            acc = field.zero
            for u in range(max(0, i + p - k), min(p, i) + 1):
                coeff = comb(p, u) * comb(k - p, i - u)
                acc = acc + coeff * apow[u] * bpow[p - u] * cpow[i - u] * dpow[k - p - i + u]
            row.append(-acc if (p + i) % 2 else acc)
        rows.append(row)
    return KMatrix.from_rows(field, rows)


def transport_matrix(gamma: Mat2, k: int) -> KMatrix:
    """Periods of psi_F(gamma(0), gamma(inf)) in terms of the base periods."""
    if gamma.det() != 1:
        raise DomainError(f"transport needs determinant 1, got {gamma.det()}")
    return _sep(transport_block(gamma, k))


def cusp_blocks(kappa: QuadElem, k: int) -> list[KMatrix]:
    return [transport_block(g, k) for g in expand(kappa).matrices]


@lru_cache(maxsize=65536)
def cusp_matrix(kappa: QuadElem, k: int) -> KMatrix:
    """M(kappa): r_{p,q}(kappa, F) = [M(kappa) r]_{(p,q)}, summed over the Hurwitz path."""
    n = (k + 1) ** 2
    total = KMatrix.zeros(kappa.field, n, n)
    for block in cusp_blocks(kappa, k):
        total = total + _sep(block)
    return total


def _binomial_shift_block(kappa: QuadElem, k: int) -> KMatrix:
    """X[p][i] = C(k-i, p-i) kappa^(p-i) for i <= p."""
    field = kappa.field
    rows = [[field.zero] * (k + 1) for _ in range(k + 1)]
    for p in range(k + 1):
        for i in range(p + 1):
            rows[p][i] = comb(k - i, p - i) * kappa ** (p - i)
    return KMatrix.from_rows(field, rows)


def r_to_c(kappa: QuadElem, k: int) -> KMatrix:
    """c_{p,q}(kappa) = sum_{i<=p, j<=q} C(k-i,p-i) C(k-j,q-j) kappa^(p-i) kappab^(q-j) r_{i,j}(kappa)."""
    return _sep(_binomial_shift_block(kappa, k))


def c_to_r(kappa: QuadElem, k: int) -> KMatrix:
    """Inverse of r_to_c: the same shape with kappa replaced by -kappa."""
    return _sep(_binomial_shift_block(-kappa, k))


def _binomial_weights(k: int) -> list[int]:
    return [comb(k, p) * comb(k, q) for p in range(k + 1) for q in range(k + 1)]


def period_to_monomial(field: Field, k: int, v: Sequence) -> PolyKK:
    """coeffs[p][q] = C(k,p) C(k,q) v[(p,q)]."""
    return PolyKK.from_vector(field, k, [w * x for w, x in zip(_binomial_weights(k), v)])


def monomial_to_period(poly: PolyKK) -> tuple[QuadElem, ...]:
    return tuple(x / w for w, x in zip(_binomial_weights(poly.k), poly.vector()))


def period_scaling(field: Field, k: int) -> KMatrix:
    """Diagonal matrix taking period coordinates to monomial coordinates."""
    return KMatrix.diag(field, _binomial_weights(k))
