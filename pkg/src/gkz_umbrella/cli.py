"""Command line front end.

Reports are deterministic JSON (sorted keys, rationals as ``"p/q"``
strings, 1-based indices). Exit codes: 0 success, 2 invalid input,
3 internal consistency failure, 4 budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import __version__
from .exactmath import fraction_str
from .multiplicity import InternalConsistencyError, char_cycle, rank_volume
from .plot import render_svg
from .slopes import SlopeFamily, filter_pyramids, slopes_along
from .toric import BudgetExceeded, initial_ideal, toric_ideal, verify_components
from .umbrella import ToricMatrix, ValidationError, as_weights, compute_umbrella


@dataclass
class InputSpec:
    """Parsed command line input; indices are stored 0-based."""

    A: list
    L: tuple | None = None
    v0: tuple = ()
    vinf: tuple = ()
    fmt: str = "json"
    nmax: int | None = None
    out: str | None = None
    extra: dict = field(default_factory=dict)

    def echo(self) -> dict:
        data = {"A": self.A}
        if self.L is not None:
            data["L"] = [fraction_str(x) for x in self.L]
        if self.v0:
            data["V_0"] = [j + 1 for j in self.v0]
        if self.vinf:
            data["V_inf"] = [j + 1 for j in self.vinf]
        return data

    def matrix(self, strict: bool = True) -> ToricMatrix:
        return ToricMatrix.of(self.A, strict=strict)

    def weights(self, n: int) -> tuple:
        if self.L is None:
            raise ValidationError("weight-required", "this command needs --L")
        return as_weights(self.L, n)


def _parse_matrix(path: str) -> list:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ValidationError("bad-input", f"cannot read {path}: {exc}") from exc
    A = data.get("A") if isinstance(data, dict) else None
    if not isinstance(A, list) or not all(isinstance(r, list) for r in A):
        raise ValidationError("bad-dimensions", 'expected {"A": [[...], ...]}')
    return A


def _parse_weights(text: str | None):
    if text is None:
        return None
    try:
        return tuple(Fraction(x.strip()) for x in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValidationError("bad-weight", f"cannot parse weights {text!r}") from exc


def _parse_indices(text: str | None) -> tuple:
    if not text:
        return ()
    try:
        idx = [int(x) for x in text.split(",")]
    except ValueError as exc:
        raise ValidationError("bad-index", f"cannot parse indices {text!r}") from exc
    return tuple(j - 1 for j in idx)


def _check_indices(spec: InputSpec, n: int):
    for j in spec.v0 + spec.vinf:
        if not 0 <= j < n:
            raise ValidationError("index-out-of-range", f"index {j + 1} not in 1..{n}")


def _labels(members) -> list[int]:
    return [j + 1 for j in sorted(members)]


def _frac_list(v) -> list[str]:
    return [fraction_str(Fraction(x)) for x in v]


def cmd_umbrella(spec: InputSpec) -> dict:
    A = spec.matrix()
    umb = compute_umbrella(A, spec.weights(A.n))
    return {
        "faces": [
            {"members": f.label(), "dim": f.dim_label(), "witness_h": _frac_list(f.witness)}
            for f in umb
        ],
        "facets": sorted(_labels(f.members) for f in umb.facets),
    }


def cmd_slopes(spec: InputSpec) -> dict:
    A = spec.matrix(strict=False)
    _check_indices(spec, A.n)
    fam = SlopeFamily(A, frozenset(spec.v0), frozenset(spec.vinf))
    report = slopes_along(fam)
    out = {}
    if fam.vinf:
        out["unfiltered_slopes"] = _frac_list(report.slopes)
        report = filter_pyramids(report, fam)
    out.update(
        {
            "slopes": _frac_list(report.slopes),
            "critical_s": _frac_list(report.critical_params),
            "intervals": [
                {
                    "s_range": [fraction_str(iv.lo), "inf" if iv.hi is None else fraction_str(iv.hi)],
                    "facets": sorted(_labels(t) for t in iv.facets),
                }
                for iv in report.intervals
            ],
            "conjectural": report.conjectural,
        }
    )
    return out


def cmd_cycle(spec: InputSpec) -> dict:
    A = spec.matrix()
    cyc = char_cycle(A, spec.weights(A.n))
    return {
        "cycle": [{"face": face, "mu": mu} for face, mu in cyc.rows()],
        "degree": cyc.degree(A),
        "rank_volume": rank_volume(A),
        "generic_parameters": cyc.generic,
    }


def cycle_csv(report: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["face", "mu"])
    for row in report["cycle"]:
        w.writerow(["{" + ",".join(map(str, row["face"])) + "}", row["mu"]])
    w.writerow(["degree", report["degree"]])
    return buf.getvalue()


def cmd_gb(spec: InputSpec) -> dict:
    A = spec.matrix(strict=False)
    L = spec.weights(A.n)
    gb = initial_ideal(toric_ideal(A), L)
    report = verify_components(gb, compute_umbrella(A, L), nmax=spec.nmax)
    if any(got is None for _, got in report.witness_checks.values()):
        raise BudgetExceeded("radical power test ran out of budget")
    return {"groebner_basis": gb.describe(), "verification": report.summary()}


def cmd_plot(spec: InputSpec) -> str:
    A = spec.matrix(strict=False)
    return render_svg(A, spec.weights(A.n))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gkz-umbrella", description="Umbrellas, slopes and characteristic cycles of toric matrices.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)
    for name, help_ in [
        ("umbrella", "faces of the (A, L)-umbrella"),
        ("slopes", "jumps along a coordinate subspace"),
        ("cycle", "characteristic cycle multiplicities"),
        ("gb", "marked Groebner basis and component checks"),
        ("plot", "SVG drawing for d = 2"),
    ]:
        s = sub.add_parser(name, help=help_)
        s.add_argument("--A", required=True, metavar="FILE", help='JSON file {"A": [[...], ...]}')
        s.add_argument("--L", help="comma separated weights, p/q allowed")
        if name == "slopes":
            s.add_argument("--v0", help="1-based indices of variables vanishing on Y")
            s.add_argument("--vinf", help="1-based indices of variables at infinity")
        if name == "cycle":
            s.add_argument("--format", choices=["json", "csv"], default="json")
        if name == "gb":
            s.add_argument("--nmax", type=int, help="power-test budget (default: $UMBRELLA_NMAX or 20 n)")
        s.add_argument("--out", help="write the report to this file instead of stdout")
    return p


def _fail(code: int, kind: str, reason: str, message: str) -> int:
    sys.stderr.write(json.dumps({"error": kind, "reason": reason, "message": message}, sort_keys=True) + "\n")
    return code


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        spec = InputSpec(
            A=_parse_matrix(args.A),
            L=_parse_weights(args.L),
            v0=_parse_indices(getattr(args, "v0", None)),
            vinf=_parse_indices(getattr(args, "vinf", None)),
            fmt=getattr(args, "format", "json"),
            nmax=getattr(args, "nmax", None),
            out=args.out,
        )
        if args.command == "plot":
            text = cmd_plot(spec)
        else:
            handler = {"umbrella": cmd_umbrella, "slopes": cmd_slopes, "cycle": cmd_cycle, "gb": cmd_gb}[args.command]
            report = handler(spec)
            if args.command == "cycle" and spec.fmt == "csv":
                text = cycle_csv(report)
            else:
                report = {"command": args.command, "input": spec.echo(), "version": __version__, **report}
                text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    except ValidationError as exc:
        return _fail(2, "validation", exc.reason, str(exc))
    except InternalConsistencyError as exc:
        return _fail(3, "internal-consistency", "internal-consistency", str(exc))
    except BudgetExceeded as exc:
        return _fail(4, "budget-exceeded", "budget-exceeded", str(exc))
    if spec.out:
        Path(spec.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def main() -> None:
    sys.exit(run())
