"""Command-line entry point: ``stairpoly <subcommand> [flags]``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import asymptotics as asy
from . import brute
from . import closed_form as cf
from . import free_energy as fe
from . import transfer
from . import verify
from .lattice import PolygonClass, to_class
from .polynomial import BivariatePolynomial

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

DEFAULTS = {
    "n": None,
    "class": "S",
    "kind": "Grafted",
    "a": "1",
    "y": "1",
    "a_range": "0.5,8,9,log",
    "y_range": "0.5,8,9,log",
    "grid": None,
    "format": None,
    "out": None,
    "parity": 0,
    "suite": "all",
    "method": "auto",
}


class UsageError(ValueError):
    pass


def fmt(x) -> str:
    """Floats with 12 significant digits; exact numbers as decimal or p/q strings."""
    if isinstance(x, bool):
        return str(x).lower()
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    x = float(x)
    if math.isinf(x) or math.isnan(x):
        return str(x)
    out = f"{x:.12g}"
    return "0" if out == "-0" else out


def parse_number(text: str):
    """Exact Fraction when the text is an integer, decimal or ratio; otherwise float."""
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError):
        try:
            return float(text)
        except ValueError:
            raise UsageError(f"not a number: {text!r}") from None


def _positive(x, name: str):
    if not x > 0:
        raise UsageError(f"{name} must be positive, got {fmt(x)}")
    return x


# ---------------------------------------------------------------------------
# configuration


def read_config(path: str) -> dict[str, str]:
    """Flat ``key = value`` lines; ``#`` starts a comment; keys use flag names."""
    out = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.lstrip("-").replace("-", "_")
        if key not in DEFAULTS:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        out[key] = value
    return out


def resolve(args: argparse.Namespace) -> dict:
    """Merge flags over config over defaults."""
    cfg = read_config(args.config) if getattr(args, "config", None) else {}
    merged = {}
    for key, default in DEFAULTS.items():
        flag = getattr(args, key, None)
        merged[key] = flag if flag is not None else cfg.get(key, default)
    return merged


@dataclass(frozen=True)
class AxisRange:
    lo: float
    hi: float
    count: int
    scale: str

    def values(self) -> list[float]:
        if self.count == 1:
            return [self.lo]
        if self.scale == "log":
            la, lb = math.log(self.lo), math.log(self.hi)
            return [math.exp(la + (lb - la) * i / (self.count - 1)) for i in range(self.count)]
        return [self.lo + (self.hi - self.lo) * i / (self.count - 1) for i in range(self.count)]


def parse_range(text: str, name: str, count_override=None) -> AxisRange:
    parts = [p.strip() for p in str(text).split(",")]
    if len(parts) not in (3, 4):
        raise UsageError(f"--{name} expects min,max,count[,linear|log]")
    try:
        lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise UsageError(f"--{name}: bad numbers in {text!r}") from None
    if count_override is not None:
        count = int(count_override)
    scale = parts[3] if len(parts) == 4 else "linear"
    if scale not in ("linear", "log"):
        raise UsageError(f"--{name}: scale must be linear or log")
    if not (lo > 0 and hi > 0):
        raise UsageError(f"--{name}: range must be positive")
    if count < 2:
        raise UsageError(f"--{name}: count must be at least 2")
    if hi < lo:
        raise UsageError(f"--{name}: max below min")
    return AxisRange(lo, hi, count, scale)


def _n(cfg, default=None) -> int:
    n = cfg["n"] if cfg["n"] is not None else default
    if n is None:
        raise UsageError("--n is required")
    try:
        n = int(n)
    except ValueError:
        raise UsageError(f"--n must be an integer, got {n!r}") from None
    if n < 0:
        raise UsageError("--n must be nonnegative")
    return n


def _emit(text: str, out) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# subcommands


def polynomial_document(n: int, cls: PolygonClass, poly: BivariatePolynomial) -> dict:
    return {
        "half_length": n,
        "class": cls.value,
        "terms": [{"v": v, "h": h, "count": str(c)} for (v, h), c in poly.items()],
        "total": str(poly.total()),
    }


def document_polynomial(doc: dict) -> BivariatePolynomial:
    return BivariatePolynomial({(int(t["v"]), int(t["h"])): int(t["count"]) for t in doc["terms"]})


def dumps(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


def cmd_enumerate(cfg) -> int:
    n = _n(cfg)
    try:
        cls = to_class(cfg["class"])
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    try:
        poly = brute.enumerate_polygons(n, cls)
    except brute.OracleLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    _emit(dumps(polynomial_document(n, cls, poly)), cfg["out"])
    return EXIT_OK


def evaluate_partition(target: str, n: int, a, y, method: str = "auto"):
    """Value of a named partition function or bound at (a, y, n)."""
    t = target.upper()
    if t in ("G", "GC") and method in ("auto", "closed"):
        return cf.closed_form_partition(n, t, a, y)
    if t in ("S", "C", "G", "GC"):
        r = transfer.polygon_dp(n, t, a, y)
        return r.value if not r.log_scale else r
    if t == "T":
        return cf.T_upper(n, a, y)
    if t == "SUPPER":
        return cf.S_upper(n, a, y)
    if t == "BRIDGE":
        return cf.bridge_partition(n, y)
    raise UsageError(f"unknown partition target {target!r}")


def cmd_partition(cfg) -> int:
    n = _n(cfg)
    a = _positive(parse_number(cfg["a"]), "a")
    y = _positive(parse_number(cfg["y"]), "y")
    method = cfg["method"]
    if method not in ("auto", "closed", "transfer"):
        raise UsageError("--method must be auto, closed or transfer")
    val = evaluate_partition(cfg["class"], n, a, y, method)
    if isinstance(val, transfer.PolygonDPResult):
        value_text, log_value = None, val.log
    else:
        value_text = fmt(val)
        log_value = asy.log_number(val) if val > 0 else -math.inf
    doc = {
        "target": str(cfg["class"]).upper(),
        "half_length": n,
        "a": fmt(a),
        "y": fmt(y),
        "value": value_text,
        "log_value": fmt(log_value),
    }
    _emit(dumps(doc), cfg["out"])
    return EXIT_OK


PHASE_COLUMNS = ["a", "y", "psi_closed", "psi_estimate", "V", "H", "phase"]


def phase_rows(kind, a_values, y_values, n: int) -> list[dict]:
    rows = []
    for a in a_values:
        for y in y_values:
            pt = fe.phase_point(kind, a, y)
            est = fe.psi_estimate(kind, float(a), float(y), n)
            rows.append({
                "a": fmt(a), "y": fmt(y), "psi_closed": fmt(pt.psi), "psi_estimate": fmt(est),
                "V": fmt(pt.V), "H": fmt(pt.H), "phase": pt.phase.value,
            })
    return rows


def cmd_phase_grid(cfg) -> int:
    try:
        kind = fe.to_kind(cfg["kind"])
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    n = _n(cfg, default=50)
    if n < 2:
        raise UsageError("--n must be at least 2 for free-energy estimates")
    ar = parse_range(cfg["a_range"], "a-range", cfg["grid"])
    yr = parse_range(cfg["y_range"], "y-range", cfg["grid"])
    rows = phase_rows(kind, ar.values(), yr.values(), n)
    form = cfg["format"] or "csv"
    if form == "json":
        text = dumps({"kind": kind.value, "half_length": n, "rows": rows})
    elif form == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=PHASE_COLUMNS, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        text = buf.getvalue()
    else:
        raise UsageError("--format must be csv or json")
    _emit(text, cfg["out"])
    return EXIT_OK


def cmd_verify(cfg) -> int:
    suite = cfg["suite"]
    if suite not in verify.SUITES:
        raise UsageError(f"unknown suite {suite!r}; choose from {', '.join(sorted(verify.SUITES))}")
    results = verify.run_suite(suite)
    report = {"suite": suite, "passed": all(r.passed for r in results),
              "checks": [r.to_dict() for r in results]}
    text = json.dumps(report, indent=2, default=_json_default) + "\n"
    if cfg["format"] == "json":
        sys.stdout.write(text)
    else:
        for r in results:
            print(r.line())
            for f in r.failures:
                print(f"    - {f}")
        print(f"{sum(r.passed for r in results)}/{len(results)} checks passed")
    if cfg["out"]:
        Path(cfg["out"]).write_text(text)
    return EXIT_OK if report["passed"] else EXIT_FAIL


def _json_default(o):
    if isinstance(o, (Fraction, int)):
        return fmt(o)
    if hasattr(o, "item"):
        return o.item()
    raise TypeError(type(o).__name__)


BASE_LADDER = (64, 96, 128, 192, 256, 300)


def parity_ladder(parity: int) -> list[int]:
    return [n - n % 4 + parity for n in BASE_LADDER]


def cmd_asymptotics_report(cfg) -> int:
    try:
        parity = int(cfg["parity"])
    except ValueError:
        raise UsageError("--parity must be 0, 1, 2 or 3") from None
    if parity not in (0, 1, 2, 3):
        raise UsageError("--parity must be 0, 1, 2 or 3")
    ladder = parity_ladder(parity)
    rows = []
    for (a, y), theta in [((2, 1), 3.0), ((1, 1), 5.0), ((3.0, 2.0), 0.5), ((1.0, 2.0), 2.0), ((3.0, 1.0), 1.5)]:
        f = asy.grafted_fit(a, y, ladder)
        rows.append({"section": "exponent", "regime": f"a={fmt(a)} y={fmt(y)}", "n": "",
                     "value": fmt(f.theta), "expected": fmt(theta)})
    for name, reg in asy.REGIMES.items():
        if parity % 2 or (reg.parity is not None and reg.parity != parity):
            continue
        for n, r in asy.verify_amplitude(name, ladder).rows:
            rows.append({"section": "amplitude-ratio", "regime": name, "n": str(n), "value": fmt(r), "expected": "1"})
    form = cfg["format"] or "csv"
    if form == "json":
        text = dumps({"parity": parity, "ladder": ladder, "rows": rows})
    elif form == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=["section", "regime", "n", "value", "expected"], lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        text = buf.getvalue()
    else:
        raise UsageError("--format must be csv or json")
    _emit(text, cfg["out"])
    return EXIT_OK


COMMANDS = {
    "enumerate": cmd_enumerate,
    "partition": cmd_partition,
    "phase-grid": cmd_phase_grid,
    "verify": cmd_verify,
    "asymptotics-report": cmd_asymptotics_report,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="stairpoly", description="Staircase polygons at an adsorbing surface under a pulling force.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--config", help="flat key = value file; flags override it")
        sp.add_argument("--out", help="write output here instead of stdout")
        sp.add_argument("--format", choices=["csv", "json"])

    sp = sub.add_parser("enumerate", help="exact partition polynomial by exhaustive enumeration")
    common(sp)
    sp.add_argument("--n", help="half-length")
    sp.add_argument("--class", dest="class", help="S, G, C or GC")

    sp = sub.add_parser("partition", help="evaluate a partition function or bound at (a, y, n)")
    common(sp)
    sp.add_argument("--n")
    sp.add_argument("--class", dest="class", help="S, G, C, GC, T, SUPPER or BRIDGE")
    sp.add_argument("--a")
    sp.add_argument("--y")
    sp.add_argument("--method", choices=["auto", "closed", "transfer"])

    sp = sub.add_parser("phase-grid", help="free energies and phases over an (a, y) grid")
    common(sp)
    sp.add_argument("--kind")
    sp.add_argument("--n", help="half-length used for psi_estimate")
    sp.add_argument("--a-range", dest="a_range", help="min,max,count[,linear|log]")
    sp.add_argument("--y-range", dest="y_range", help="min,max,count[,linear|log]")
    sp.add_argument("--grid", help="point count applied to both axes")

    sp = sub.add_parser("verify", help="run an acceptance suite")
    common(sp)
    sp.add_argument("suite", nargs="?", default=None, help=", ".join(verify.SUITES))

    sp = sub.add_parser("asymptotics-report", help="exponent fits and amplitude ratios on an n ladder")
    common(sp)
    sp.add_argument("--parity", help="n mod 4 residue of the ladder")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve(args)
        return COMMANDS[args.command](cfg)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
