"""Command-line front end.

Exit codes: 0 success, 1 domain error (or a failing ``verify``), 2 parse
error or bad usage.  ``--format json`` output always carries
``"schema": "hallmotive/1"``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import List, Optional

from . import epsilon as ep
from . import hallcore as hc
from . import integrate as ig
from . import spectra as sp
from .fixtures import resolve_fixture
from .qscalar import ParseError

SCHEMA = "hallmotive/1"
DEFAULT_CAP = 4
EXIT_OK, EXIT_DOMAIN, EXIT_PARSE = 0, 1, 2


class UsageError(Exception):
    pass


def default_cap() -> int:
    raw = os.environ.get("HALLMOTIVE_MAX_DEGREE")
    if raw is None:
        return DEFAULT_CAP
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"HALLMOTIVE_MAX_DEGREE must be an integer, got {raw!r}")
    if value < 0:
        raise UsageError("HALLMOTIVE_MAX_DEGREE must be nonnegative")
    return value


def parse_cap(text: Optional[str]):
    """'4' is a total-degree cap, '2,3' a componentwise one."""
    if text is None:
        return hc.TruncationBound(total=default_cap())
    try:
        parts = [int(p) for p in text.split(",")]
    except ValueError:
        raise UsageError(f"--cap expects an integer or comma-separated integers, got {text!r}")
    if any(p < 0 for p in parts):
        raise UsageError("--cap entries must be nonnegative")
    if "," in text:
        return hc.TruncationBound(componentwise=tuple(parts))
    return hc.TruncationBound(total=parts[0])


def load_quiver(name: str) -> ep.QuiverSpec:
    try:
        return ep.QuiverSpec.load(resolve_fixture(name))
    except FileNotFoundError as exc:
        raise UsageError(str(exc))
    except ValueError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"{name}: {exc}")


def load_problem(name: str) -> sp.SpectralProblem:
    try:
        return sp.SpectralProblem.load(resolve_fixture(name))
    except FileNotFoundError as exc:
        raise UsageError(str(exc))


def element_json(x: hc.HallElement) -> list:
    return [{"monomial": hc.format_monomial(m), "coeff": str(c)} for m, c in x.items()]


def _check_letters(x: hc.HallElement, quiver: ep.QuiverSpec):
    for m in x.terms:
        for w in m:
            for g in w:
                if len(g) != quiver.vertex_count:
                    raise ValueError(f"letter {hc.format_letter(g)} does not fit a "
                                     f"{quiver.vertex_count}-vertex quiver")


# -- subcommands -------------------------------------------------------------------


def cmd_pi(args):
    x = hc.parse_element(args.elem)
    y = hc.pi_op(args.k, x)
    return {"command": "pi", "k": args.k, "input": x.format(),
            "result": y.format(), "terms": element_json(y)}, y.format()


def cmd_eop(args):
    x = hc.parse_element(args.elem)
    y = hc.e_op(args.r, x)
    return {"command": "eop", "r": args.r, "input": x.format(),
            "result": y.format(), "terms": element_json(y)}, y.format()


def cmd_epsilon(args):
    quiver = load_quiver(args.quiver)
    cap = parse_cap(args.cap)
    y = ep.eps(args.k, quiver, cap)
    return {"command": "epsilon", "k": args.k, "quiver": quiver.to_json(),
            "cap": str(cap), "result": y.format(), "terms": element_json(y)}, y.format()


def cmd_integrate(args):
    quiver = load_quiver(args.quiver)
    cap = parse_cap(args.cap)
    x = hc.parse_element(args.elem)
    _check_letters(x, quiver)
    s = ig.integrate(x, quiver, cap)
    return {"command": "integrate", "quiver": quiver.to_json(), "cap": str(cap),
            "input": x.format(), "series": s.to_json()}, s.format()


def cmd_residue(args):
    quiver = load_quiver(args.quiver)
    cap = parse_cap(args.cap)
    if args.elem is None:
        x = ep.eps(args.k, quiver, cap)
    else:
        x = hc.parse_element(args.elem)
        _check_letters(x, quiver)
    res = ig.residue_series(x, args.k, quiver, cap)
    degrees = sorted(res, key=lambda g: (sum(g), g))
    rows = [{"degree": list(g), "value": str(res[g])} for g in degrees]
    text = "\n".join(f"{ig._fmt_degree(g)}: {res[g]}" for g in degrees) or "0"
    return {"command": "residue", "k": args.k, "quiver": quiver.to_json(),
            "cap": str(cap), "input": x.format(), "residues": rows}, text


def cmd_spectra(args):
    p = load_problem(args.problem)
    values, P = sp.eigen_decompose(p)
    out = {"command": "spectra", "labels": list(p.labels), "mode": p.mode,
           "eigenvalues": [
               {"value": v.format(),
                "partition": _partition_json(v, p.size)} for v in values],
           "basis_change": [[x.format() for x in row] for row in P]}
    lines = ["eigenvalues:"]
    for v in values:
        lam = sp.match_partition(v, _bound(p.size))
        lines.append(f"  {v.format()}" + (f"  partition {list(lam)}" if lam is not None else ""))
    if args.vector is not None:
        comps = sp.decompose_vector(p, args.vector)
        groups = sp.ord_grouped_sums(p, args.vector)
        out["vector"] = args.vector
        out["components"] = [{"eigenvalue": v.format(),
                              "vector": [x.format() for x in c]}
                             for v, c in comps.items()]
        out["ord_groups"] = [{"order": r, "vector": [x.format() for x in vec],
                              "constant": all(x.is_constant() for x in vec)}
                             for r, vec in groups.items()]
        out["rational"] = sp.ord_group_rationality(p, args.vector)
        lines.append(f"components of {args.vector}:")
        for v, c in comps.items():
            lines.append(f"  [{v.format()}] " + ", ".join(x.format() for x in c))
        lines.append("ord-grouped sums:")
        for r, vec in groups.items():
            lines.append(f"  ord {r}: " + ", ".join(x.format() for x in vec))
        lines.append(f"rational: {'yes' if out['rational'] else 'no'}")
    return out, "\n".join(lines)


def _bound(n: int) -> int:
    return max(2 * n, 4)


def _partition_json(v, n):
    lam = sp.match_partition(v, _bound(n))
    return None if lam is None else list(lam)


def cmd_verify(args):
    from .verify import SUITES, run_suites

    if args.suite is not None and args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; known: {', '.join(SUITES)}")
    top = args.max_degree if args.max_degree is not None else default_cap()
    outcomes = run_suites([args.suite] if args.suite else None, top)
    ok = all(o.passed for o in outcomes)
    out = {"command": "verify", "max_degree": top, "passed": ok,
           "results": [{"suite": o.suite, "property": o.name, "passed": o.passed,
                        "detail": o.detail}
                       for o in outcomes]}
    lines = [f"{'PASS' if o.passed else 'FAIL'}  {o.suite}: {o.name}"
             + (f"  ({o.detail})" if o.detail else "") for o in outcomes]
    lines.append(f"{sum(o.passed for o in outcomes)}/{len(outcomes)} properties passed")
    return out, "\n".join(lines), (EXIT_OK if ok else EXIT_DOMAIN)


# -- argument parsing ------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")

    parser = _Parser(prog="hallmotive",
                     description="Exact motivic Hall algebra computations.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("pi", parents=[common], help="eigenprojection pi_k")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--elem", required=True, help='element, e.g. "[2]" or "1/2*[1][1]"')
    p.set_defaults(func=cmd_pi)

    p = sub.add_parser("eop", parents=[common], help="idempotent operator E_r")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--elem", required=True)
    p.set_defaults(func=cmd_eop)

    p = sub.add_parser("epsilon", parents=[common], help="epsilon function eps_k")
    p.add_argument("--quiver", required=True, help="quiver JSON file or bundled name")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--cap", help="truncation: N (total degree) or a,b,... (per vertex)")
    p.set_defaults(func=cmd_epsilon)

    p = sub.add_parser("integrate", parents=[common], help="integral into the twisted algebra")
    p.add_argument("--quiver", required=True)
    p.add_argument("--elem", required=True)
    p.add_argument("--cap")
    p.set_defaults(func=cmd_integrate)

    p = sub.add_parser("residue", parents=[common], help="q=1 residues of an integral")
    p.add_argument("--quiver", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--cap")
    p.add_argument("--elem", help="element to integrate (default: eps_k of the quiver)")
    p.set_defaults(func=cmd_residue)

    p = sub.add_parser("spectra", parents=[common], help="decompose a presented operator")
    p.add_argument("--problem", required=True, help="problem JSON file or bundled name")
    p.add_argument("--vector")
    p.set_defaults(func=cmd_spectra)

    p = sub.add_parser("verify", parents=[common], help="run the invariant suites")
    p.add_argument("--suite")
    p.add_argument("--max-degree", type=int)
    p.set_defaults(func=cmd_verify)
    return parser


def _nonneg(args):
    for name in ("k", "r", "max_degree"):
        v = getattr(args, name, None)
        if v is not None and v < 0:
            raise UsageError(f"--{name.replace('_', '-')} must be nonnegative")


def run(argv: Optional[List[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        _nonneg(args)
        result = args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_PARSE
    except ParseError as exc:
        print(f"parse error: {exc}", file=stderr)
        return EXIT_PARSE
    except (ValueError, ArithmeticError, KeyError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_DOMAIN
    payload, text = result[0], result[1]
    code = result[2] if len(result) > 2 else EXIT_OK
    if args.format == "json":
        print(json.dumps({"schema": SCHEMA, **payload}, indent=2), file=stdout)
    else:
        print(text, file=stdout)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
