"""Hurwitz continued fractions over O_K and the SL2(O_K) generators."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .quadfield import DomainError, Field, QuadElem, QuadInt, coprime, nearest_int

Scalar = Union[QuadElem, int, Fraction]
Cusp = tuple[QuadElem, QuadElem]


@dataclass(frozen=True)
class Mat2:
    """The 2x2 matrix ((a, b), (c, d)) over K."""

    a: QuadElem
    b: QuadElem
    c: QuadElem
    d: QuadElem

    @classmethod
    def of(cls, field: Field, a: Scalar, b: Scalar, c: Scalar, d: Scalar) -> Mat2:
        lift = lambda v: v if isinstance(v, QuadElem) else QuadElem(field, v, 0)  # noqa: E731
        return cls(lift(a), lift(b), lift(c), lift(d))

    @classmethod
    def identity(cls, field: Field) -> Mat2:
        return cls.of(field, 1, 0, 0, 1)

    @property
    def field(self) -> Field:
        return self.a.field

    def __matmul__(self, other: Mat2) -> Mat2:
        return Mat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __neg__(self) -> Mat2:
        return Mat2(-self.a, -self.b, -self.c, -self.d)

    def __pow__(self, e: int) -> Mat2:
        if e < 0:
            return self.inverse() ** (-e)
        out = Mat2.identity(self.field)
        for _ in range(e):
            out = out @ self
        return out

    def det(self) -> QuadElem:
        return self.a * self.d - self.b * self.c

    def inverse(self) -> Mat2:
        det = self.det()
        if det.is_zero():
            raise DomainError("singular matrix")
        inv = det.inverse()
        return Mat2(self.d * inv, -self.b * inv, -self.c * inv, self.a * inv)

    @property
    def is_integral(self) -> bool:
        return all(isinstance(v, QuadInt) for v in (self.a, self.b, self.c, self.d))

    def act(self, cusp: Cusp) -> Cusp:
        """Moebius action on a projective point (x : y)."""
        x, y = cusp
        return (self.a * x + self.b * y, self.c * x + self.d * y)

    def entries(self) -> tuple[tuple[QuadElem, QuadElem], tuple[QuadElem, QuadElem]]:
        return ((self.a, self.b), (self.c, self.d))

    def to_strings(self) -> list[list[str]]:
        return [[str(self.a), str(self.b)], [str(self.c), str(self.d)]]


def cusp(value: QuadElem | None, field: Field) -> Cusp:
    """Projective coordinates of a cusp; None stands for infinity = (1 : 0)."""
    if value is None:
        return (field.one, field.zero)
    return (value, field.one)


def same_cusp(p: Cusp, q: Cusp) -> bool:
    return (p[0] * q[1] - p[1] * q[0]).is_zero()


@dataclass(frozen=True)
class CFExpansion:
    """Hurwitz expansion kappa = [beta_0; beta_1, ..., beta_m].

    ``convergents`` lists (mu_n, nu_n) for n = -2..m, so index n + 2 holds step n.
    """

    kappa: QuadElem
    betas: tuple[QuadInt, ...]
    convergents: tuple[tuple[QuadInt, QuadInt], ...]
    matrices: tuple[Mat2, ...]

    @property
    def length(self) -> int:
        return len(self.betas)

    def convergent(self, n: int) -> tuple[QuadInt, QuadInt]:
        return self.convergents[n + 2]


def expand(kappa: Scalar, field: Field | None = None) -> CFExpansion:
    if not isinstance(kappa, QuadElem):
        if field is None:
            raise TypeError("a field is required for rational input")
        kappa = QuadElem(field, kappa, 0)
    field = kappa.field
    betas = []
    current = kappa
    while True:
        beta = nearest_int(current)
        betas.append(beta)
        rest = current - beta
        if rest.is_zero():
            break
        current = rest.inverse()

    convergents = [(field.zero, field.one), (field.one, field.zero)]
    for beta in betas:
        (mu2, nu2), (mu1, nu1) = convergents[-2], convergents[-1]
        convergents.append((beta * mu1 + mu2, beta * nu1 + nu2))

    matrices = [Mat2.of(field, 1, betas[0], 0, 1)]
    for n in range(1, len(betas)):
        sign = -1 if n % 2 else 1
        step = Mat2.of(field, 0, -sign, sign, betas[n])
        matrices.append(matrices[-1] @ step)
    return CFExpansion(kappa, tuple(betas), tuple(convergents), tuple(matrices))


def expansion_defects(cf: CFExpansion) -> list[str]:
    """Every violated invariant of an expansion; empty when all hold exactly.

    Checks the three-term recursion and its seeds, integrality and unit
    determinant of each g_n, g_n(0) = mu_n/nu_n and g_n(inf) = mu_{n-1}/nu_{n-1},
    and that the last convergent is kappa in lowest terms.
    """
    field = cf.kappa.field
    out = []
    if cf.convergents[:2] != ((field.zero, field.one), (field.one, field.zero)):
        out.append("seed convergents")
    for n, beta in enumerate(cf.betas):
        (mu2, nu2), (mu1, nu1), (mu, nu) = cf.convergents[n : n + 3]
        if mu != beta * mu1 + mu2 or nu != beta * nu1 + nu2:
            out.append(f"recursion at n={n}")
        g = cf.matrices[n]
        if not g.is_integral or g.det() != 1:
            out.append(f"g_{n} not in SL2(O_K)")
        if not same_cusp(g.act(cusp(field.zero, field)), (mu, nu)):
            out.append(f"g_{n}(0) != mu_{n}/nu_{n}")
        if not same_cusp(g.act(cusp(None, field)), (mu1, nu1)):
            out.append(f"g_{n}(inf) != mu_{n - 1}/nu_{n - 1}")
    mu, nu = cf.convergents[-1]
    if nu.is_zero() or mu / nu != cf.kappa:
        out.append("final convergent differs from kappa")
    elif not coprime(mu, nu):
        out.append("final convergent not in lowest terms")
    return out


# -- generators of SL2(O_K) ------------------------------------------------------

GENERATOR_NAMES = ("I", "S", "T", "Tw", "U", "L", "E")


def generators(field: Field) -> dict[str, Mat2]:
    """S, T, Tw, U = TS for every D; L for D in {1, 3}; E for D = 11."""
    w = field.omega
    gens = {
        "I": Mat2.identity(field),
        "S": Mat2.of(field, 0, -1, 1, 0),
        "T": Mat2.of(field, 1, 1, 0, 1),
        "Tw": Mat2.of(field, 1, w, 0, 1),
    }
    gens["U"] = gens["T"] @ gens["S"]
    if field.d == 1:
        gens["L"] = Mat2.of(field, w, 0, 0, -w)
    elif field.d == 3:
        gens["L"] = Mat2.of(field, w * w, 0, 0, w)
    if field.d == 11:
        tw = gens["Tw"]
        gens["E"] = tw.inverse() @ gens["S"] @ tw @ gens["S"] @ gens["T"]
    return gens


def generator(field: Field, name: str) -> Mat2:
    gens = generators(field)
    if name not in gens:
        raise DomainError(f"generator {name!r} is not available for D={field.d}")
    return gens[name]
