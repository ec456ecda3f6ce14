"""The ``cyclomod`` command line.

Exit status: 0 on success, 1 when a computation fails or reports an ERROR
diagnostic, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import commands
from .bdf import DEFAULT_BUDGET
from .covering import BranchData
from .cyclotomic import divisors
from .errors import CyclomodError
from .report import Report
from .verify import UsageError, VerifyConfig, verify_all


def _int_list(text: str) -> list:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def parse_ranks(n: int, text: str) -> dict:
    """``1,1,1,1`` in increasing divisor order, or explicit ``d:r`` pairs."""
    if ":" in text:
        out = {}
        for item in text.split(","):
            d, _, r = item.partition(":")
            try:
                out[int(d)] = int(r)
            except ValueError:
                raise UsageError(f"bad rank entry {item!r}") from None
        if any(n % d for d in out):
            raise UsageError(f"rank given for a non-divisor of {n}")
        return out
    values = _int_list(text)
    divs = divisors(n)
    if len(values) != len(divs):
        raise UsageError(f"n={n} has {len(divs)} divisors {divs} but {len(values)} ranks were given")
    if any(r < 0 for r in values):
        raise UsageError("ranks must be non-negative")
    return dict(zip(divs, values))


def _read_json(ref: str):
    """Inline JSON, ``@path`` for a file, or ``@name`` for a bundled fixture when no such file exists."""
    if ref.startswith("@"):
        path = Path(ref[1:])
        if path.exists():
            text = path.read_text()
        else:
            try:
                return commands.load_data(ref[1:])
            except (FileNotFoundError, OSError):
                raise UsageError(f"no such file {ref[1:]!r}") from None
    elif Path(ref).exists():
        text = Path(ref).read_text()
    else:
        text = ref
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"invalid JSON: {exc}") from None


def _branch(n, m) -> BranchData:
    if n is None or m is None:
        raise UsageError("--n and --m are required unless --batch is given")
    return BranchData(n, tuple(_int_list(m)))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the JSON report")
    common.add_argument("--out", help="also write the JSON report to this file")

    p = argparse.ArgumentParser(prog="cyclomod", description="Exact computations with cyclotomic rings "
                                "and cyclic covers of the line.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("phi", parents=[common], help="cyclotomic polynomial Phi_d")
    s.add_argument("d", type=int)

    s = sub.add_parser("ring", parents=[common], help="structure of Z[x]/(Phi_d, Phi_m)")
    s.add_argument("d", type=int)
    s.add_argument("m", type=int)

    s = sub.add_parser("disc-check", parents=[common], help="discriminant of x^n - 1 and its factorization")
    s.add_argument("n", type=int)

    s = sub.add_parser("crt-check", parents=[common], help="generalized CRT and cokernel checks")
    s.add_argument("n", type=int)

    s = sub.add_parser("lattice", parents=[common], help="lattice from a finite x-stable subgroup")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--ranks", required=True)
    s.add_argument("--gens", default="[]", help="JSON list of elements, or @file")

    for name, text in (("cover", "homology of a cyclic cover"), ("intersect", "intersection form")):
        s = sub.add_parser(name, parents=[common], help=text)
        s.add_argument("--n", type=int)
        s.add_argument("--m", help="comma-separated branch exponents m_0,...,m_inf")
        if name == "cover":
            s.add_argument("--batch", help="JSON file with a list of {n, m} objects")

    bdf = sub.add_parser("bdf", help="Bagnera-De Franchis data")
    bsub = bdf.add_subparsers(dest="bdf_command", required=True)
    s = bsub.add_parser("validate", parents=[common])
    s.add_argument("datum", help="datum JSON file (@name for a bundled fixture)")
    s = bsub.add_parser("enumerate", parents=[common])
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--ranks", required=True)
    s.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    s = sub.add_parser("verify-all", parents=[common], help="run the full verification battery")
    s.add_argument("--n-max", type=int)
    s.add_argument("--config", help="JSON configuration file")
    return p


def _dispatch(args) -> Report:
    c = args.command
    if c == "phi":
        return commands.phi(args.d)
    if c == "ring":
        return commands.ring(args.d, args.m)
    if c == "disc-check":
        return commands.disc_check(args.n)
    if c == "crt-check":
        return commands.crt_check(args.n)
    if c == "lattice":
        gens = _read_json(args.gens)
        if not isinstance(gens, list):
            raise UsageError("--gens must be a JSON list")
        return commands.lattice(args.n, parse_ranks(args.n, args.ranks), gens)
    if c == "cover" and args.batch:
        cases = _read_json("@" + args.batch)
        if isinstance(cases, dict):
            cases = cases.get("cases", [])
        results = [commands.cover(BranchData.from_json(x)) for x in cases]
        rep = Report("cover", {"results": [r.to_json() for r in results]})
        rep.diagnostics = [d for r in results for d in r.diagnostics]
        return rep
    if c == "cover":
        return commands.cover(_branch(args.n, args.m))
    if c == "intersect":
        return commands.intersect(_branch(args.n, args.m))
    if c == "bdf":
        if args.bdf_command == "validate":
            return commands.bdf_validate(_read_json(args.datum if args.datum.startswith("@")
                                                    else "@" + args.datum))
        return commands.bdf_enumerate(args.n, parse_ranks(args.n, args.ranks), args.budget)
    if c == "verify-all":
        if args.config is not None:
            data = _read_json("@" + args.config)
            if args.n_max is not None and isinstance(data, dict) and data:
                data = {**data, "n_max": args.n_max}
            config = VerifyConfig.from_json(data)
        elif args.n_max is not None:
            config = VerifyConfig.scaled(args.n_max)
        else:
            config = VerifyConfig()
        return verify_all(config)
    raise UsageError(f"unknown command {c!r}")


def run_report(argv) -> Report:
    """Parse and execute; errors propagate as exceptions."""
    args = build_parser().parse_args(list(argv))
    return _dispatch(args)


def _execute(argv) -> tuple:
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return None, None, int(exc.code or 0)
    try:
        rep = _dispatch(args)
    except UsageError as exc:
        print(f"cyclomod: usage error: {exc}", file=sys.stderr)
        return args, None, 2
    except CyclomodError as exc:
        name = " ".join(filter(None, (args.command, getattr(args, "bdf_command", None))))
        rep = Report(name, {"error": {"type": type(exc).__name__, "message": str(exc)}})
        rep.error(f"{type(exc).__name__}: {exc}")
        return args, rep, 1
    return args, rep, rep.exit_status


def run(argv) -> tuple:
    """Return ``(report, exit_code)``; the report is None on usage errors."""
    _, rep, code = _execute(argv)
    return rep, code


def render(rep: Report, as_json: bool) -> str:
    if as_json:
        return rep.dumps()
    if rep.command == "phi" and rep.exit_status == 0:
        return rep.payload["poly"]["text"]
    return rep.text()


def main(argv=None) -> int:
    args, rep, code = _execute(sys.argv[1:] if argv is None else argv)
    if rep is None:
        return code
    out = render(rep, args.json)
    if "error" in rep.payload:
        err = rep.payload["error"]
        print(f"error: {err['type']}: {err['message']}", file=sys.stderr)
        if args.json:
            print(out)
    else:
        print(out)
    if args.out:
        Path(args.out).write_text(rep.dumps() + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
