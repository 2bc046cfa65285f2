"""Command-line front end: every command prints canonical JSON with exact element strings."""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path
from typing import Sequence

from .hecke import WEIGHT_RULES, hecke_matrix, joint_eigenspace_in_w
from .hurwitz import expand
from .linalg import Vector
from .periods import cusp_matrix
from .quadfield import FIELDS, DomainError, Field, QuadElem, get_field, parse_elem
from .relations import wkk_basis
from .verify import run_verify

K_MAX = 16


class CLIError(Exception):
    def __init__(self, kind: str, message: str):
        super().__init__(message)
        self.kind = kind


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CLIError("usage", message)


def _strings(vec: Vector) -> list[str]:
    return [str(v) for v in vec]


def _field(d: int) -> Field:
    if d not in FIELDS:
        raise CLIError("unsupported_field", f"D must be one of {sorted(FIELDS)}, got {d}")
    return get_field(d)


def _k(k: int) -> int:
    if not 0 <= k <= K_MAX:
        raise CLIError("k_out_of_range", f"k must lie in 0..{K_MAX}, got {k}")
    return k


def _elem(text: str, field: Field) -> QuadElem:
    try:
        return parse_elem(text, field)
    except DomainError as exc:
        raise CLIError("malformed_element", str(exc)) from exc


_QUOTIENT = re.compile(r"^\s*\((.*)\)\s*/\s*\((.*)\)\s*$")


def _kappa(text: str, field: Field) -> QuadElem:
    """An element, or a quotient written "(elem)/(elem)"."""
    m = _QUOTIENT.match(text)
    if m is None:
        return _elem(text, field)
    num, den = _elem(m.group(1), field), _elem(m.group(2), field)
    if den.is_zero():
        raise CLIError("malformed_element", f"zero denominator in {text!r}")
    return num / den


def _integral(text: str, field: Field):
    v = _elem(text, field)
    if not v.is_integral:
        raise CLIError("malformed_element", f"{text!r} is not an algebraic integer")
    if v.is_zero():
        raise CLIError("domain", "n must be nonzero")
    return v


def _pairs(text: str, field: Field) -> list[tuple]:
    out = []
    for chunk in text.split(","):
        if ":" not in chunk:
            raise CLIError("malformed_pairs", f"expected n:lambda, got {chunk!r}")
        n_text, lam_text = chunk.split(":", 1)
        out.append((_integral(n_text, field), _elem(lam_text, field)))
    return out


# -- commands -------------------------------------------------------------------


def cmd_cf(args) -> tuple[dict, int]:
    field = _field(args.d)
    cf = expand(_kappa(args.kappa, field))
    return {
        "d": field.d,
        "kappa": str(cf.kappa),
        "betas": _strings(cf.betas),
        "convergents": [[str(mu), str(nu)] for mu, nu in cf.convergents],
        "matrices": [g.to_strings() for g in cf.matrices],
    }, 0


def cmd_wkk(args) -> tuple[dict, int]:
    field = _field(args.d)
    k = _k(args.k)
    w = wkk_basis(field, k)
    return {
        "d": field.d,
        "k": k,
        "dim_w": w.dim,
        "dim_w_tilde": w.quotient_dim,
        "basis": [_strings(v) for v in w.vectors],
        "quotient_basis": [_strings(v) for v in w.quotient],
        "coboundary_in_w": w.contains_coboundary,
    }, 0


def cmd_transport(args) -> tuple[dict, int]:
    field = _field(args.d)
    k = _k(args.k)
    kappa = _kappa(args.kappa, field)
    return {"d": field.d, "k": k, "kappa": str(kappa), "matrix": cusp_matrix(kappa, k).to_strings()}, 0


def cmd_hecke(args) -> tuple[dict, int]:
    field = _field(args.d)
    k = _k(args.k)
    return hecke_matrix(_integral(args.n, field), field, k, args.weights).to_json(), 0


def cmd_eigen(args) -> tuple[dict, int]:
    field = _field(args.d)
    k = _k(args.k)
    pairs = _pairs(args.pairs, field)
    space = joint_eigenspace_in_w(pairs, field, k)
    return {
        "d": field.d,
        "k": k,
        "pairs": [[str(n), str(lam)] for n, lam in pairs],
        "dim": space.dim,
        "basis": [_strings(v) for v in space.vectors],
        "w_tilde_basis": [_strings(v) for v in space.quotient],
        "w_tilde_coordinates": [_strings(v) for v in space.quotient_coordinates],
    }, 0


def cmd_verify(args) -> tuple[dict, int]:
    field = _field(args.d)
    k = _k(args.k)
    if args.norm_bound < 1:
        raise CLIError("domain", "norm bound must be positive")
    report = run_verify(field, k, args.norm_bound, diagnostics=args.diagnostics)
    return report.to_json(), 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bianchi-periods", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, handler, help_text, needs_k=True):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--d", type=int, required=True, help="field discriminant parameter D")
        if needs_k:
            p.add_argument("--k", type=int, required=True, help=f"weight parameter, 0..{K_MAX}")
        p.add_argument("--output", type=Path, help="write JSON here instead of stdout")
        p.set_defaults(handler=handler)
        return p

    add("cf", cmd_cf, "Hurwitz continued fraction of kappa", needs_k=False).add_argument(
        "--kappa", required=True, help='element, or "(elem)/(elem)"'
    )
    add("wkk", cmd_wkk, "basis of W_{k,k} and its quotient by the coboundary")
    add("transport", cmd_transport, "cusp matrix M(kappa) on period coordinates").add_argument(
        "--kappa", required=True
    )
    p = add("hecke", cmd_hecke, "Hecke matrix A(n)")
    p.add_argument("--n", required=True)
    p.add_argument("--weights", choices=WEIGHT_RULES, default="closed_form")
    add("eigen", cmd_eigen, "W_{k,k} intersected with Ker(A(n_i) - lambda_i)").add_argument(
        "--pairs", required=True, help='"n1:lambda1,n2:lambda2,..."'
    )
    p = add("verify", cmd_verify, "run the identity checks; exit 1 if any fails")
    p.add_argument("--norm-bound", type=int, required=True)
    p.add_argument("--diagnostics", action="store_true", help="also report W-stability of A(n)")
    return parser


def _emit_error(kind: str, message: str) -> None:
    sys.stderr.write(json.dumps({"error": kind, "message": message}, sort_keys=True) + "\n")


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        payload, status = args.handler(args)
    except CLIError as exc:
        _emit_error(exc.kind, str(exc))
        return 2
    except (DomainError, ZeroDivisionError) as exc:
        _emit_error("domain", str(exc))
        return 2
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if args.output is not None:
        args.output.write_text(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
