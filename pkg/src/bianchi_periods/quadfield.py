"""Exact arithmetic in the five Euclidean imaginary quadratic fields.

Elements of K = Q(sqrt(-D)) are stored as x + y*w over the basis {1, w} with
w the standard generator of the ring of integers, and all products are
reduced with w^2 = t*w - m.  An element whose coordinates are both integers
is an instance of :class:`QuadInt`; every other element is a plain
:class:`QuadElem`.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Union

Rational = Union[int, Fraction]


class DomainError(ValueError):
    """An argument lies outside the domain of an exact operation."""


@dataclass(frozen=True)
class Field:
    """Constants of K = Q(sqrt(-D)) for a Euclidean D.

    ``t`` and ``m`` are the trace and norm of w, so that w^2 = t*w - m.
    """

    d: int
    t: int
    m: int

    @property
    def disc(self) -> int:
        """4m - t^2; the imaginary part of x + y*w is y*sqrt(disc)/2."""
        return 4 * self.m - self.t * self.t

    def __call__(self, x: Rational = 0, y: Rational = 0) -> QuadElem:
        return QuadElem(self, x, y)

    @property
    def zero(self) -> QuadInt:
        return QuadInt(self, 0, 0)

    @property
    def one(self) -> QuadInt:
        return QuadInt(self, 1, 0)

    @property
    def omega(self) -> QuadInt:
        return QuadInt(self, 0, 1)

    @property
    def delta(self) -> QuadInt:
        """sqrt(-D) written in the {1, w} basis."""
        if self.d in (1, 2):
            return QuadInt(self, 0, 1)
        if self.d == 3:
            return QuadInt(self, 1, 2)
        return QuadInt(self, -1, 2)

    @property
    def units(self) -> tuple[QuadInt, ...]:
        """The unit group, ordered by increasing argument starting at 1."""
        return _units(self)

    def __repr__(self) -> str:
        return f"Field(D={self.d})"


FIELDS: dict[int, Field] = {
    1: Field(1, 0, 1),
    2: Field(2, 0, 2),
    3: Field(3, -1, 1),
    7: Field(7, 1, 2),
    11: Field(11, 1, 3),
}


def get_field(d: int) -> Field:
    try:
        return FIELDS[d]
    except KeyError:
        raise DomainError(f"D={d} is not one of the Euclidean values 1, 2, 3, 7, 11") from None


@lru_cache(maxsize=None)
def _units(field: Field) -> tuple[QuadInt, ...]:
    u = QuadInt
    if field.d == 1:
        return (u(field, 1, 0), u(field, 0, 1), u(field, -1, 0), u(field, 0, -1))
    if field.d == 3:
        # 1, -w^2, w, -1, w^2, -w with w^2 = -1 - w
        return (
            u(field, 1, 0),
            u(field, 1, 1),
            u(field, 0, 1),
            u(field, -1, 0),
            u(field, -1, -1),
            u(field, 0, -1),
        )
    return (u(field, 1, 0), u(field, -1, 0))


def _normalize(v: Rational) -> Rational:
    if isinstance(v, int):
        return v
    if isinstance(v, Fraction):
        return v.numerator if v.denominator == 1 else v
    if isinstance(v, float):
        raise TypeError("floating point values are not accepted; use Fraction")
    return _normalize(Fraction(v))


class QuadElem:
    """An element x + y*w of K with exact rational coordinates."""

    __slots__ = ("field", "x", "y")

    field: Field
    x: Rational
    y: Rational

    def __new__(cls, field: Field, x: Rational = 0, y: Rational = 0):
        x = _normalize(x)
        y = _normalize(y)
        integral = isinstance(x, int) and isinstance(y, int)
        if cls is QuadInt and not integral:
            raise DomainError(f"{x} + {y}*w is not an algebraic integer")
        target = QuadInt if integral else QuadElem
        obj = object.__new__(target)
        object.__setattr__(obj, "field", field)
        object.__setattr__(obj, "x", x)
        object.__setattr__(obj, "y", y)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("QuadElem is immutable")

    def __reduce__(self):
        return (QuadElem, (self.field, self.x, self.y))

    # -- coercion -----------------------------------------------------------
    def _coerce(self, other) -> QuadElem | None:
        if isinstance(other, QuadElem):
            if other.field != self.field:
                raise DomainError(f"cannot mix elements of {self.field} and {other.field}")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadElem(self.field, other, 0)
        return None

    # -- ring operations ----------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadElem(self.field, self.x + o.x, self.y + o.y)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadElem(self.field, self.x - o.x, self.y - o.y)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return QuadElem(self.field, -self.x, -self.y)

    def __pos__(self):
        return self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        t, m = self.field.t, self.field.m
        byy = self.y * o.y
        return QuadElem(
            self.field,
            self.x * o.x - m * byy,
            self.x * o.y + self.y * o.x + t * byy,
        )

    __rmul__ = __mul__

    def inverse(self) -> QuadElem:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in K")
        c = self.conj()
        return QuadElem(self.field, Fraction(c.x) / n, Fraction(c.y) / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result = QuadElem(self.field, 1, 0)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- field structure ----------------------------------------------------
    def conj(self) -> QuadElem:
        # conj(w) = t - w
        return QuadElem(self.field, self.x + self.field.t * self.y, -self.y)

    def norm(self) -> Rational:
        x, y = self.x, self.y
        return _normalize(x * x + self.field.t * x * y + self.field.m * y * y)

    def trace(self) -> Rational:
        return _normalize(2 * self.x + self.field.t * self.y)

    def real_part(self) -> Rational:
        """Re(x + y*w) = x + y*t/2."""
        return _normalize(self.x + Fraction(self.field.t * self.y, 2) if self.y else self.x)

    @property
    def is_integral(self) -> bool:
        return isinstance(self, QuadInt)

    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, QuadElem):
            return self.field == other.field and self.x == other.x and self.y == other.y
        if isinstance(other, (int, Fraction)):
            return self.y == 0 and self.x == other
        return NotImplemented

    def __hash__(self):
        if self.y == 0:
            return hash(self.x)
        return hash((self.field.d, self.x, self.y))

    def sort_key(self) -> tuple:
        """(norm, real part, w-coordinate); the order used for divisor lists."""
        return (self.norm(), self.real_part(), self.y)

    def __str__(self) -> str:
        return format_elem(self)

    def __repr__(self) -> str:
        return f"{type(self).__name__}(D={self.field.d}, {format_elem(self)})"


class QuadInt(QuadElem):
    """An element a + b*w of the ring of integers."""

    __slots__ = ()

    @property
    def a(self) -> int:
        return self.x

    @property
    def b(self) -> int:
        return self.y


# -- text format ------------------------------------------------------------

def _format_rat(v: Rational) -> str:
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    return str(v)


def format_elem(v: QuadElem) -> str:
    """Canonical string: ``x``, ``y*w`` or ``x+y*w`` / ``x-y*w``."""
    if v.y == 0:
        return _format_rat(v.x)
    ys = _format_rat(v.y)
    if v.x == 0:
        return f"{ys}*w"
    if v.y < 0:
        return f"{_format_rat(v.x)}-{_format_rat(-v.y)}*w"
    return f"{_format_rat(v.x)}+{ys}*w"


_RAT = re.compile(r"^(\d+)(?:/(\d+))?$")


def _parse_rat(text: str, source: str) -> Fraction:
    match = _RAT.match(text)
    if not match:
        raise DomainError(f"malformed rational {text!r} in element {source!r}")
    num = int(match.group(1))
    den = int(match.group(2)) if match.group(2) is not None else 1
    if den == 0:
        raise DomainError(f"zero denominator in element {source!r}")
    return Fraction(num, den)


def parse_elem(text: str, field: Field) -> QuadElem:
    """Parse ``<rat>``, ``<rat>*w`` or ``<rat>+-<rat>*w``; whitespace is ignored."""
    source = text
    s = "".join(text.split())
    if not s:
        raise DomainError("empty element string")
    terms = re.findall(r"[+-]?[^+-]+", s)
    if "".join(terms) != s:
        raise DomainError(f"malformed element {source!r}")
    x: Fraction | None = None
    y: Fraction | None = None
    for term in terms:
        sign = -1 if term.startswith("-") else 1
        body = term.lstrip("+-")
        if body.endswith("w"):
            coeff = body[:-1]
            if coeff.endswith("*"):
                coeff = coeff[:-1]
                if not coeff:
                    raise DomainError(f"malformed element {source!r}")
            value = _parse_rat(coeff, source) if coeff else Fraction(1)
            if y is not None:
                raise DomainError(f"repeated w-term in element {source!r}")
            y = sign * value
        else:
            if x is not None or y is not None:
                raise DomainError(f"malformed element {source!r}")
            x = sign * _parse_rat(body, source)
    return QuadElem(field, x or 0, y or 0)


# -- rounding and gcd ---------------------------------------------------------

def nearest_int(kappa: QuadElem | Rational, field: Field | None = None) -> QuadInt:
    """Nearest element of O_K, ties broken towards smaller real part, then smaller w-coordinate."""
    if not isinstance(kappa, QuadElem):
        if field is None:
            raise TypeError("a field is required for rational input")
        kappa = QuadElem(field, kappa, 0)
    field = kappa.field
    # |Im(kappa - beta)| < 1 bounds |y - b| by 2/sqrt(disc) <= 2/sqrt(3), so three
    # b-values suffice; for each b the real part pins a to within one of its rounding.
    t, m = field.t, field.m
    # kappa = (X + Y*w)/q; all comparisons below are scaled by q^2
    q = math.lcm(Fraction(kappa.x).denominator, Fraction(kappa.y).denominator)
    big_x, big_y = int(kappa.x * q), int(kappa.y * q)
    b0 = (2 * big_y + q) // (2 * q)
    best_key = None
    for b in (b0 - 1, b0, b0 + 1):
        dy = big_y - b * q
        a0 = (2 * big_x + t * dy + q) // (2 * q)
        for a in (a0 - 1, a0, a0 + 1):
            dx = big_x - a * q
            # norm of kappa - beta, then Re(beta) scaled by 2, then b
            key = (dx * dx + t * dx * dy + m * dy * dy, 2 * a + t * b, b, a)
            if best_key is None or key < best_key:
                best_key = key
    return QuadInt(field, best_key[3], best_key[2])


def _in_sector(v: QuadElem) -> bool:
    """Whether arg(v) lies in [0, 2*pi/|units|)."""
    field = v.field
    re_part = Fraction(v.real_part())
    if field.d == 1:
        return re_part > 0 and v.y >= 0
    if field.d == 3:
        im_sq = Fraction(v.y * v.y * field.disc, 4)
        return re_part > 0 and v.y >= 0 and im_sq < 3 * re_part * re_part
    return v.y > 0 or (v.y == 0 and re_part > 0)


def canonical_associate(a: QuadInt) -> QuadInt:
    if a.is_zero():
        raise DomainError("zero has no canonical associate")
    for u in a.field.units:
        cand = u * a
        if _in_sector(cand):
            return cand
    raise AssertionError(f"no associate of {a!r} in the canonical sector")


def is_unit(a: QuadElem) -> bool:
    return isinstance(a, QuadInt) and a.norm() == 1


def divides(d: QuadElem, n: QuadElem) -> bool:
    if d.is_zero():
        return n.is_zero()
    return isinstance(n / d, QuadInt)


def exact_div(n: QuadInt, d: QuadInt) -> QuadInt:
    q = n / d
    if not isinstance(q, QuadInt):
        raise DomainError(f"{d} does not divide {n}")
    return q


def euclid_gcd(a: QuadInt, b: QuadInt) -> QuadInt:
    if a.is_zero() and b.is_zero():
        raise DomainError("gcd(0, 0) is undefined")
    while not b.is_zero():
        q = nearest_int(a / b)
        a, b = b, a - q * b
    return canonical_associate(a)


def coprime(a: QuadInt, b: QuadInt) -> bool:
    """Whether (a, b) is the unit ideal.

    The ideal is the Z-span of a, a*w, b, b*w; its index in O_K is the gcd of
    the 2x2 minors of those four coordinate vectors.
    """
    vecs = [(v.x, v.y) for v in (a, a * a.field.omega, b, b * b.field.omega)]
    g = 0
    for i in range(4):
        for j in range(i + 1, 4):
            g = math.gcd(g, vecs[i][0] * vecs[j][1] - vecs[i][1] * vecs[j][0])
            if g == 1:
                return True
    return g == 1


# -- factorisation ------------------------------------------------------------

def _rational_prime_factors(n: int) -> list[int]:
    primes = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            primes.append(p)
            while n % p == 0:
                n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        primes.append(n)
    return primes


def elements_of_norm(field: Field, n: int) -> list[QuadInt]:
    """All a + b*w with norm n (bounded search over the ellipse)."""
    out = []
    # norm >= b^2 * disc / 4
    bmax = math.isqrt(4 * n // field.disc) + 1
    t, m = field.t, field.m
    for b in range(-bmax, bmax + 1):
        # a^2 + t*b*a + (m*b^2 - n) = 0
        disc = t * t * b * b - 4 * (m * b * b - n)
        if disc < 0:
            continue
        r = math.isqrt(disc)
        if r * r != disc:
            continue
        for root in {(-t * b + r), (-t * b - r)}:
            if root % 2 == 0:
                out.append(QuadInt(field, root // 2, b))
    return sorted(out, key=lambda v: (v.x, v.y))


@lru_cache(maxsize=None)
def primes_above(field: Field, p: int) -> tuple[QuadInt, ...]:
    """Canonical prime elements of O_K lying over the rational prime p."""
    found = elements_of_norm(field, p)
    if not found:
        return (QuadInt(field, p, 0),)
    pi = canonical_associate(found[0])
    pi_bar = canonical_associate(pi.conj())
    if pi == pi_bar:
        return (pi,)
    return tuple(sorted((pi, pi_bar), key=QuadElem.sort_key))


@lru_cache(maxsize=None)
def factor(n: QuadInt) -> tuple[tuple[QuadInt, int], ...]:
    """Prime factorisation of (n) as ((pi, e), ...) with canonical primes."""
    if n.is_zero():
        raise DomainError("cannot factor zero")
    out = []
    rest = n
    for p in _rational_prime_factors(int(n.norm())):
        for pi in primes_above(n.field, p):
            e = 0
            while True:
                q = rest / pi
                if not isinstance(q, QuadInt):
                    break
                rest = q
                e += 1
            if e:
                out.append((pi, e))
    if rest.norm() != 1:
        raise AssertionError(f"incomplete factorisation of {n!r}")
    return tuple(sorted(out, key=lambda pe: pe[0].sort_key()))


@lru_cache(maxsize=None)
def divisors(n: QuadInt) -> tuple[QuadInt, ...]:
    """One canonical generator per ideal divisor of (n), sorted by sort_key."""
    if n.is_zero():
        raise DomainError("zero has infinitely many divisors")
    fac = factor(n)
    out = []
    for exps in product(*(range(e + 1) for _, e in fac)):
        d = n.field.one
        for (pi, _), e in zip(fac, exps):
            d = d * pi**e
        out.append(canonical_associate(d))
    return tuple(sorted(out, key=QuadElem.sort_key))


@lru_cache(maxsize=None)
def residues(d: QuadInt, coprime_only: bool = False) -> tuple[QuadInt, ...]:
    """Representatives x + y*w (0 <= x < A, 0 <= y < C) of O_K/(d)."""
    if d.is_zero():
        raise DomainError("residues modulo zero")
    field = d.field
    # d*O_K is spanned by d*1 = (a, b) and d*w = (-m*b, a + t*b); its projection on
    # the w-axis is C*Z and its intersection with the 1-axis is A*Z with A*C = N(d).
    c_step = math.gcd(d.y, d.x + field.t * d.y)
    a_step = int(d.norm()) // c_step
    out = []
    for y in range(c_step):
        for x in range(a_step):
            r = QuadInt(field, x, y)
            if coprime_only and not coprime(r, d):
                continue
            out.append(r)
    return tuple(out)


# -- arithmetic functions -----------------------------------------------------

def phi_tilde(n: QuadInt) -> int:
    """|(O_K/(n))^x| by counting coprime residues."""
    if n.is_zero():
        raise DomainError("phi_tilde(0) is undefined")
    return len(residues(n, True))


def phi_tilde_formula(n: QuadInt) -> int:
    """|(O_K/(n))^x| from the factorisation: prod N(pi)^e - N(pi)^(e-1)."""
    if n.is_zero():
        raise DomainError("phi_tilde(0) is undefined")
    total = 1
    for pi, e in factor(n):
        q = int(pi.norm())
        total *= q**e - q ** (e - 1)
    return total


def sigma_tilde(exponent: int, n: QuadInt) -> int:
    """Sum of |d|^exponent over ideal divisors d of n (exponent even)."""
    if exponent < 0 or exponent % 2:
        raise DomainError("sigma_tilde needs a non-negative even exponent")
    half = exponent // 2
    return sum(int(d.norm()) ** half for d in divisors(n))


def ideals_up_to(field: Field, bound: int, include_units: bool = True) -> list[QuadInt]:
    """Canonical generators of all nonzero ideals of norm <= bound, in sort_key order."""
    seen = set()
    for norm in range(1 if include_units else 2, bound + 1):
        for v in elements_of_norm(field, norm):
            seen.add(canonical_associate(v))
    return sorted(seen, key=QuadElem.sort_key)
