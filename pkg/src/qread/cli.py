"""Command-line front end.

Subcommands:
    gain             bound report {F, C, Q, J_class, J_quant, G} at one point
    table            the six reference parameter rows as CSV
    critical-curve   critical signal number versus r0 at fixed N_S
    critical-energy  exact threshold versus its high-energy estimate at r0=0
    verify           cross-check the Gaussian closed forms against the
                     Fock-basis engine; exit 0 iff every check passes

All numeric CSV output uses 12 significant digits, `inf` for unbounded
values, and "\n" line endings, so identical flags give byte-identical files.
A config file (one `key = value` per line, keys named like the long flags)
can supply any flag; explicit flags win over the file, the file over
defaults.
"""

import argparse
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from .bounds import info_gain
from .channels import IdealCell, MemoryCell, SignalProfile
from .critical import (
    DEFAULT_M_CAP,
    DEFAULT_NB_CAP,
    critical_M,
    critical_M_at_noise,
    m_tilde,
)
from .fock import CutoffError
from .verify import run_verify

CSV_HEADER = "M,N_S,r0,r1,N_B,F,C,Q,J_class,J_quant,G"

# the six reference rows: (M, N_S, r0, r1, N_B)
TABLE_ROWS = (
    (1, 3.5, 0.5, 0.95, 0.01),
    (10, 1.0, 0.2, 0.8, 0.01),
    (30, 1.0, 0.38, 0.85, 1.0),
    (100, 0.1, 0.25, 0.85, 0.01),
    (200, 0.1, 0.6, 0.95, 0.01),
    (200000, 0.01, 0.995, 1.0, 0.0),
)


def _fmt(x: float) -> str:
    """12 significant digits; infinities render as `inf`."""
    return f"{float(x):.12g}"


def _parse_range(text: str) -> list[float]:
    """A sweep axis: a single value, a comma list, or start:stop:steps."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"range must be start:stop:steps, got {text!r}")
        start, stop, steps = float(parts[0]), float(parts[1]), int(parts[2])
        if steps < 1:
            raise ValueError("steps must be >= 1")
        if steps == 1:
            return [start]
        return [start + (stop - start) * k / (steps - 1) for k in range(steps)]
    return [float(v) for v in text.split(",")]


def _load_config(path: str) -> dict:
    values = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected 'key = value'")
            key, value = line.split("=", 1)
            values[key.strip().replace("-", "_")] = value.strip()
    return values


# flag name -> converter for values coming from a config file
_CONVERTERS = {
    "m": int,
    "ns": str,
    "r0": str,
    "r1": float,
    "nb": float,
    "out": str,
    "jobs": int,
    "m_cap": int,
    "nb_cap": float,
    "cutoff": int,
    "grid": str,
}


def _merge_config(args: argparse.Namespace) -> argparse.Namespace:
    """Fill flags the command line left unset from the config file."""
    if not getattr(args, "config", None):
        return args
    config = _load_config(args.config)
    for key, raw in config.items():
        if key not in _CONVERTERS:
            raise ValueError(f"unknown config key {key!r}")
        if hasattr(args, key) and getattr(args, key) is None:
            setattr(args, key, _CONVERTERS[key](raw))
    return args


def _require(args, names):
    for name in names:
        if getattr(args, name) is None:
            raise ValueError(f"missing required flag --{name.replace('_', '-')}")


def _emit(lines: list[str], out: str | None):
    text = "\n".join(lines) + "\n"
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _gain_row(point) -> str:
    m, n_s, r0, r1, n_b = point
    report = info_gain(MemoryCell(r0, r1, n_b), SignalProfile(m, n_s))
    fields = (
        m,
        n_s,
        r0,
        r1,
        n_b,
        report.f,
        report.c,
        report.q,
        report.j_class,
        report.j_quant,
        report.g,
    )
    return ",".join(_fmt(v) for v in fields)


def cmd_gain(args) -> int:
    _require(args, ["m", "ns", "r0", "r1", "nb"])
    r0 = float(args.r0)
    try:
        cell = MemoryCell(r0, args.r1, args.nb)
    except ValueError as exc:
        raise ValueError(f"--r0/--r1/--nb: {exc}") from exc
    try:
        profile = SignalProfile(args.m, float(args.ns))
    except ValueError as exc:
        raise ValueError(f"--m/--ns: {exc}") from exc
    report = info_gain(cell, profile)
    labels = [
        ("M", args.m),
        ("N_S", float(args.ns)),
        ("r0", r0),
        ("r1", args.r1),
        ("N_B", args.nb),
        ("F", report.f),
        ("C", report.c),
        ("Q", report.q),
        ("J_class", report.j_class),
        ("J_quant", report.j_quant),
        ("G", report.g),
        ("s_opt", report.s_opt),
    ]
    for name, value in labels:
        print(f"{name:8s}= {_fmt(value)}")
    if args.out:
        _emit(
            [CSV_HEADER, _gain_row((args.m, float(args.ns), r0, args.r1, args.nb))],
            args.out,
        )
    return 0


def cmd_table(args) -> int:
    lines = [CSV_HEADER] + [_gain_row(row) for row in TABLE_ROWS]
    _emit(lines, args.out)
    return 0


def _critical_worker(task):
    r0, n_s, m_cap, nb_cap = task
    point = critical_M(r0, n_s, m_cap=m_cap, nb_cap=nb_cap)
    return point.m_crit, point.n_b_worst


def _map_jobs(worker, tasks, jobs: int):
    if jobs <= 1 or len(tasks) <= 1:
        return [worker(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        # map preserves input order regardless of completion order
        return list(pool.map(worker, tasks))


def cmd_critical_curve(args) -> int:
    _require(args, ["ns"])
    r0_grid = _parse_range(args.r0) if args.r0 else _parse_range("0:0.99:100")
    for r0 in r0_grid:
        if not 0.0 <= r0 < 1.0:
            raise ValueError(f"--r0: need values in [0, 1), got {r0}")
    m_cap = args.m_cap if args.m_cap is not None else DEFAULT_M_CAP
    nb_cap = args.nb_cap if args.nb_cap is not None else DEFAULT_NB_CAP
    jobs = args.jobs if args.jobs is not None else (os.cpu_count() or 1)
    n_s = float(args.ns)
    tasks = [(r0, n_s, m_cap, nb_cap) for r0 in r0_grid]
    results = _map_jobs(_critical_worker, tasks, jobs)
    lines = ["N_S,r0,M_crit,N_B_worst"]
    for r0, (m_crit, nb_worst) in zip(r0_grid, results):
        lines.append(
            ",".join(_fmt(v) for v in (n_s, r0, m_crit, nb_worst))
        )
    _emit(lines, args.out)
    return 0


def _energy_worker(task):
    n_s, m_cap = task
    m_exact = critical_M_at_noise(IdealCell(0.0, 0.0), n_s, m_cap)
    estimate = m_tilde(n_s)
    return m_exact, estimate


def cmd_critical_energy(args) -> int:
    ns_grid = _parse_range(args.ns) if args.ns else _parse_range("1:2.6:17")
    for n_s in ns_grid:
        if n_s < 1.0:
            raise ValueError(f"--ns: the estimate needs N_S >= 1, got {n_s}")
    m_cap = args.m_cap if args.m_cap is not None else DEFAULT_M_CAP
    jobs = args.jobs if args.jobs is not None else (os.cpu_count() or 1)
    results = _map_jobs(_energy_worker, [(n_s, m_cap) for n_s in ns_grid], jobs)
    lines = ["N_S,M_exact,M_tilde,ceil_M_tilde"]
    for n_s, (m_exact, estimate) in zip(ns_grid, results):
        ceil_est = math.ceil(estimate) if math.isfinite(estimate) else estimate
        lines.append(
            ",".join(_fmt(v) for v in (n_s, m_exact, estimate, ceil_est))
        )
    _emit(lines, args.out)
    return 0


def cmd_verify(args) -> int:
    fine = (args.grid or "coarse") == "fine"
    try:
        checks = run_verify(cutoff=args.cutoff, fine=fine)
    except CutoffError as exc:
        print(f"FAIL  {exc}")
        return 2
    for check in checks:
        print(check.line())
    return 0 if all(c.passed for c in checks) else 1


def _add_common(sub):
    sub.add_argument("--out", help="write CSV here instead of stdout")
    sub.add_argument("--config", help="key = value file supplying defaults")
    sub.add_argument("--jobs", type=int, help="worker processes for sweeps")
    sub.add_argument("--m-cap", dest="m_cap", type=int, help="search cap on M")
    sub.add_argument(
        "--nb-cap", dest="nb_cap", type=float, help="cap on the bath sweep"
    )
    sub.add_argument("--cutoff", type=int, help="forced Fock cutoff")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qread",
        description="Error-probability bounds for reading optical memories",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("gain", help="bound report at one parameter point")
    p.add_argument("--m", type=int, help="number of signal modes M")
    p.add_argument("--ns", type=float, help="mean photons per signal mode")
    p.add_argument("--r0", help="pit reflectivity")
    p.add_argument("--r1", type=float, help="land reflectivity")
    p.add_argument("--nb", type=float, help="bath mean photon number")
    _add_common(p)
    p.set_defaults(func=cmd_gain)

    p = subs.add_parser("table", help="the six reference rows as CSV")
    _add_common(p)
    p.set_defaults(func=cmd_table)

    p = subs.add_parser(
        "critical-curve", help="critical M versus r0 at fixed N_S"
    )
    p.add_argument("--ns", help="mean photons per signal mode")
    p.add_argument("--r0", help="r0 sweep: value, comma list, or start:stop:steps")
    _add_common(p)
    p.set_defaults(func=cmd_critical_curve)

    p = subs.add_parser(
        "critical-energy",
        help="exact threshold versus high-energy estimate at r0 = 0",
    )
    p.add_argument(
        "--ns", help="N_S sweep: value, comma list, or start:stop:steps"
    )
    _add_common(p)
    p.set_defaults(func=cmd_critical_energy)

    p = subs.add_parser("verify", help="closed forms versus the Fock engine")
    p.add_argument("--grid", choices=("coarse", "fine"), help="check density")
    _add_common(p)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args = _merge_config(args)
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
