"""V_{k,k} and the right slash action of 2x2 matrices on it.

A polynomial is stored as the (k+1) x (k+1) grid ``coeffs[p][q]`` of the
monomial X^(k-p) Y^p Xb^(k-q) Yb^q, flattened as idx(p, q) = p*(k+1) + q.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .hurwitz import Mat2, generator
from .linalg import KMatrix
from .quadfield import DomainError, Field, QuadElem, parse_elem

Word = tuple[tuple[int, tuple[str, ...]], ...]


def idx(p: int, q: int, k: int) -> int:
    return p * (k + 1) + q


@dataclass(frozen=True)
class PolyKK:
    field: Field
    k: int
    coeffs: tuple[tuple[QuadElem, ...], ...]

    def __post_init__(self):
        n = self.k + 1
        if len(self.coeffs) != n or any(len(row) != n for row in self.coeffs):
            raise ValueError(f"coefficient grid must be {n} x {n}")

    @classmethod
    def from_vector(cls, field: Field, k: int, vec: Sequence) -> PolyKK:
        n = k + 1
        if len(vec) != n * n:
            raise ValueError(f"expected {n * n} coordinates, got {len(vec)}")
        lift = [v if isinstance(v, QuadElem) else field(v) for v in vec]
        return cls(field, k, tuple(tuple(lift[p * n : (p + 1) * n]) for p in range(n)))

    @classmethod
    def zero(cls, field: Field, k: int) -> PolyKK:
        return cls.from_vector(field, k, [0] * (k + 1) ** 2)

    @classmethod
    def monomial(cls, field: Field, k: int, p: int, q: int, coeff=1) -> PolyKK:
        vec = [0] * (k + 1) ** 2
        vec[idx(p, q, k)] = coeff
        return cls.from_vector(field, k, vec)

    @classmethod
    def coboundary(cls, field: Field, k: int) -> PolyKK:
        """X^k Xb^k - Y^k Yb^k."""
        return cls.from_vector(field, k, coboundary_vector(field, k))

    def vector(self) -> tuple[QuadElem, ...]:
        return tuple(v for row in self.coeffs for v in row)

    def slash(self, gamma: Mat2) -> PolyKK:
        return PolyKK.from_vector(self.field, self.k, slash_matrix(gamma, self.k).apply(self.vector()))

    def __add__(self, other: PolyKK) -> PolyKK:
        return PolyKK.from_vector(
            self.field, self.k, [a + b for a, b in zip(self.vector(), other.vector())]
        )

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.vector())

    def to_json(self) -> dict:
        return {
            "d": self.field.d,
            "k": self.k,
            "coeffs": [[str(v) for v in row] for row in self.coeffs],
        }

    @classmethod
    def from_json(cls, data: dict, field: Field) -> PolyKK:
        if data["d"] != field.d:
            raise DomainError("polynomial belongs to a different field")
        k = data["k"]
        rows = [[parse_elem(s, field) for s in row] for row in data["coeffs"]]
        return cls(field, k, tuple(tuple(r) for r in rows))


def coboundary_vector(field: Field, k: int) -> tuple[QuadElem, ...]:
    vec = [field.zero] * (k + 1) ** 2
    vec[0] = vec[0] + 1
    vec[-1] = vec[-1] - 1
    return tuple(vec)


def _poly_mul(f: list, g: list) -> list:
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            out[i + j] = out[i + j] + a * b
    return out


def _linear_power(u: QuadElem, v: QuadElem, e: int) -> list:
    """Coefficients in Y-degree of (u X + v Y)^e."""
    out = [u.field.one]
    for _ in range(e):
        out = _poly_mul(out, [u, v])
    return out


def slash_block(gamma: Mat2, k: int) -> KMatrix:
    """(k+1)x(k+1) matrix of P(X, Y) -> P(aX + bY, cX + dY) on degree-k forms."""
    field = gamma.field
    rows = [[field.zero] * (k + 1) for _ in range(k + 1)]
    for p in range(k + 1):
        image = _poly_mul(_linear_power(gamma.a, gamma.b, k - p), _linear_power(gamma.c, gamma.d, p))
        for p2, coeff in enumerate(image):
            rows[p2][p] = coeff
    return KMatrix.from_rows(field, rows)


@lru_cache(maxsize=4096)
def slash_matrix(gamma: Mat2, k: int) -> KMatrix:
    """Matrix M with coeffs(P|gamma) = M @ coeffs(P); M(g1 g2) = M(g2) M(g1)."""
    block = slash_block(gamma, k)
    # the Xb, Yb variables see conjugated entries, and the result separates
    return block.kron(block.conj())


# -- group words --------------------------------------------------------------

_TOKEN = re.compile(r"\s*(\d+|[A-Za-z]+|\^|-|\+|\*|\(|\))")


def parse_word(text: str) -> Word:
    """Parse a formal integer combination of generator products.

    Terms are separated by + or -, factors by * or whitespace, and each factor
    is a generator name or a parenthesised product, optionally raised to ^n
    (n may be negative), e.g. ``"I + Tw*S*L + (Tw*S*L)^2"``.
    """
    tokens = _TOKEN.findall(text)
    if "".join(tokens) != "".join(text.split()):
        raise DomainError(f"malformed group word {text!r}")
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def take():
        nonlocal pos
        if pos >= len(tokens):
            raise DomainError(f"unexpected end of group word {text!r}")
        tok = tokens[pos]
        pos += 1
        return tok

    def exponent() -> int:
        if peek() != "^":
            return 1
        take()
        sign = 1
        if peek() == "-":
            take()
            sign = -1
        tok = take()
        if not tok.isdigit():
            raise DomainError(f"bad exponent in {text!r}")
        return sign * int(tok)

    def product() -> tuple[str, ...]:
        factors: list[str] = []
        while peek() is not None and peek() not in ("+", "-", ")"):
            tok = take()
            if tok == "*":
                continue
            if tok == "(":
                inner = product()
                if take() != ")":
                    raise DomainError(f"unbalanced parentheses in {text!r}")
            elif tok.isalpha():
                inner = (tok,)
            else:
                raise DomainError(f"unexpected token {tok!r} in {text!r}")
            e = exponent()
            if e >= 0:
                factors.extend(inner * e)
            else:
                factors.extend(_invert(inner) * (-e))
        return tuple(factors)

    terms = []
    while peek() is not None:
        sign = 1
        while peek() in ("+", "-"):
            if take() == "-":
                sign = -sign
        coeff = 1
        if peek() is not None and peek().isdigit():
            coeff = int(take())
            if peek() == "*":
                take()
        factors = product()
        if not factors:
            raise DomainError(f"empty term in {text!r}")
        terms.append((sign * coeff, factors))
    return tuple(terms)


def _invert(factors: tuple[str, ...]) -> tuple[str, ...]:
    return tuple(f[:-1] if f.endswith("'") else f + "'" for f in reversed(factors))


def word_element(field: Field, factors: Sequence[str]) -> Mat2:
    """Product of generators; a trailing apostrophe marks an inverse."""
    out = Mat2.identity(field)
    for name in factors:
        if name.endswith("'"):
            out = out @ generator(field, name[:-1]).inverse()
        else:
            out = out @ generator(field, name)
    return out


def word_matrix(field: Field, word: Word | str, k: int) -> KMatrix:
    """Matrix of P -> P|word = sum of c * P|(product)."""
    if isinstance(word, str):
        word = parse_word(word)
    n = (k + 1) ** 2
    total = KMatrix.zeros(field, n, n)
    for coeff, factors in word:
        total = total + slash_matrix(word_element(field, factors), k).scale(coeff)
    return total


def apply_group_word(poly: PolyKK, word: Word | str) -> PolyKK:
    mat = word_matrix(poly.field, word, poly.k)
    return PolyKK.from_vector(poly.field, poly.k, mat.apply(poly.vector()))
