"""Batch verification of the exact identities, with a JSON-ready report."""

from __future__ import annotations

import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Callable, Iterable

from .hecke import first_row_difference, hecke_matrix, w_stability
from .hurwitz import expand, expansion_defects, generators
from .linalg import KMatrix
from .periods import c_to_r, r_to_c
from .polyspace import slash_matrix, word_element
from .quadfield import (
    Field,
    QuadElem,
    divisors,
    ideals_up_to,
    phi_tilde,
    phi_tilde_formula,
    residues,
    sigma_tilde,
)

WORKERS_ENV = "BIANCHI_WORKERS"
SLASH_SEED = 20240607


@dataclass
class CheckResult:
    name: str
    cases_run: int = 0
    cases_passed: int = 0
    first_failure: str | None = None

    def record(self, ok: bool, witness: Callable[[], str] | str) -> None:
        self.cases_run += 1
        if ok:
            self.cases_passed += 1
        elif self.first_failure is None:
            self.first_failure = witness() if callable(witness) else witness

    @property
    def passed(self) -> bool:
        return self.cases_passed == self.cases_run

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "cases_run": self.cases_run,
            "cases_passed": self.cases_passed,
            "first_failure": self.first_failure,
        }


@dataclass
class VerifyReport:
    field: Field
    k: int
    norm_bound: int
    checks: list[CheckResult] = dc_field(default_factory=list)
    diagnostics: dict | None = None

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        out = {
            "d": self.field.d,
            "k": self.k,
            "norm_bound": self.norm_bound,
            "ok": self.ok,
            "checks": [c.to_json() for c in self.checks],
        }
        if self.diagnostics is not None:
            out["diagnostics"] = self.diagnostics
        return out


def worker_count() -> int:
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _map(fn, items: list, workers: int) -> list:
    if workers <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * workers))))


# -- individual checks ------------------------------------------------------------


def _flagship_case(args: tuple) -> tuple[str, int, bool, bool]:
    n, k = args
    mat = hecke_matrix(n, n.field, k).matrix
    ok = first_row_difference(mat, k) == sigma_tilde(2 * k + 2, n)
    return str(n), k, ok, mat.is_integral()


def check_flagship(field: Field, k: int, norm_bound: int, workers: int = 1) -> tuple[CheckResult, CheckResult]:
    """r_{0,0} - r_{k,k} coefficient in row (0,0) of A(n) against sigma_{2k+2}(n), plus integrality."""
    identity = CheckResult("hecke_first_row_identity")
    integral = CheckResult("hecke_integrality")
    cases = [(n, kk) for kk in range(1, k + 1) for n in ideals_up_to(field, norm_bound, include_units=False)]
    for n, kk, ok, is_int in _map(_flagship_case, cases, workers):
        identity.record(ok, f"k={kk} n={n}")
        integral.record(is_int, f"k={kk} n={n}")
    return identity, integral


def check_totient(field: Field, norm_bound: int) -> CheckResult:
    """sum_{d | n} phi(d) = N(n) with phi counted, and counted phi = product formula."""
    res = CheckResult("totient_identity")
    for n in ideals_up_to(field, norm_bound):
        divs = divisors(n)
        counted = [phi_tilde(d) for d in divs]
        ok = sum(counted) == n.norm() and all(c == phi_tilde_formula(d) for c, d in zip(counted, divs))
        res.record(ok, f"n={n}")
    return res


def cf_cases(field: Field, norm_bound: int) -> Iterable[QuadElem]:
    """kappa = mu/nu with nu canonical, N(nu) <= bound, mu over residues coprime to nu."""
    for nu in ideals_up_to(field, norm_bound):
        for mu in residues(nu, True):
            yield mu / nu


def check_cf_roundtrip(field: Field, norm_bound: int) -> CheckResult:
    res = CheckResult("cf_roundtrip")
    for kappa in cf_cases(field, norm_bound):
        defects = expansion_defects(expand(kappa))
        res.record(not defects, lambda: f"kappa={kappa}: {defects[0]}")
    return res


def random_words(field: Field, count: int, max_len: int, seed: int = SLASH_SEED) -> list[tuple[str, ...]]:
    """Deterministic random words in the generators and their inverses (apostrophe)."""
    names = sorted(n for n in generators(field) if n != "I")
    letters = names + [n + "'" for n in names]
    rng = random.Random(seed * 31 + field.d)
    return [tuple(rng.choice(letters) for _ in range(rng.randint(1, max_len))) for _ in range(count)]


def slash_law_holds(field: Field, word: tuple[str, ...], k: int) -> bool:
    """slash(g1 ... gL) = slash(gL) ... slash(g1) for the right action."""
    composed = KMatrix.identity(field, (k + 1) ** 2)
    for letter in word:
        composed = slash_matrix(word_element(field, (letter,)), k) @ composed
    return slash_matrix(word_element(field, word), k) == composed


def check_slash_laws(field: Field, k: int, words: int = 200, max_len: int = 4) -> CheckResult:
    res = CheckResult("slash_laws")
    gens = generators(field)
    sample = random_words(field, words, max_len)
    for kk in range(k + 1):
        ident = KMatrix.identity(field, (kk + 1) ** 2)
        s = slash_matrix(gens["S"], kk)
        res.record(s @ s == ident, f"k={kk}: S^2")
        res.record(slash_matrix(-gens["I"], kk) == ident, f"k={kk}: -I")
        for word in sample:
            res.record(slash_law_holds(field, word, kk), lambda: f"k={kk}: {'*'.join(word)}")
    return res


def kappa_grid(field: Field, count: int = 50) -> list[QuadElem]:
    """The first ``count`` distinct (x + y*w)/q, q = 1, 2, 3, ..., x, y in [-2, 2]."""
    seen: list[QuadElem] = []
    q = 1
    while len(seen) < count:
        for x in range(-2, 3):
            for y in range(-2, 3):
                v = field(Fraction(x, q), Fraction(y, q))
                if v not in seen:
                    seen.append(v)
                if len(seen) == count:
                    return seen
        q += 1
    return seen


def check_rc_inversion(field: Field, k: int, count: int = 50) -> CheckResult:
    res = CheckResult("rc_inversion")
    for kk in range(k + 1):
        ident = KMatrix.identity(field, (kk + 1) ** 2)
        for kappa in kappa_grid(field, count):
            ok = r_to_c(kappa, kk) @ c_to_r(kappa, kk) == ident and c_to_r(kappa, kk) @ r_to_c(kappa, kk) == ident
            res.record(ok, f"k={kk} kappa={kappa}")
    return res


def stability_diagnostics(field: Field, k: int, norm_bound: int) -> dict:
    """Whether A(n) (and its transpose) maps W into W + coboundary, per (k, n); reported, not asserted."""
    rows = []
    for kk in range(1, min(k, 3) + 1):
        for n in ideals_up_to(field, min(norm_bound, 10), include_units=False):
            rows.append({"k": kk, "n": str(n), **w_stability(n, field, kk)})
    return {"w_stability": rows}


def run_verify(
    field: Field, k: int, norm_bound: int, workers: int | None = None, diagnostics: bool = False
) -> VerifyReport:
    workers = worker_count() if workers is None else workers
    report = VerifyReport(field, k, norm_bound)
    report.checks.extend(check_flagship(field, k, norm_bound, workers))
    report.checks.append(check_totient(field, norm_bound))
    report.checks.append(check_cf_roundtrip(field, norm_bound))
    report.checks.append(check_slash_laws(field, k))
    report.checks.append(check_rc_inversion(field, k))
    if diagnostics:
        report.diagnostics = stability_diagnostics(field, k, norm_bound)
    return report
