"""Command-line sweeps over system size, bin count and bin-growth exponent.

Subcommands: ``sweep-n``, ``sweep-bins``, ``point``, ``scaling``, ``oracle-check``.
Exit codes: 0 success, 1 configuration error, 2 numerical invariant
violation, 3 oracle mismatch.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict, dataclass
from typing import Sequence

import numpy as np

from . import oracle
from .coarse import (
    BinningScheme,
    binned_entropy,
    binned_pmf,
    concentration_bin,
    scaled_bins,
)
from .collective import (
    collective_entropy,
    collective_entropy_asymptotic,
    collective_moments,
    collective_pmf,
    degenerate_sum_asymptotic,
)
from .numerics import LN2, DomainError
from .states import (
    SpinCoherentState,
    eur_product_bound,
    eur_sum_product,
    magnetization_expectations,
    product_basis_entropy,
    robertson_bound_check,
)

EXIT_OK, EXIT_CONFIG, EXIT_INVARIANT, EXIT_ORACLE = 0, 1, 2, 3

CSV_FIELDS = ("n_spins", "n_bins", "method", "h_x_bits", "h_z_bits", "sum_bits",
              "conc_bin_x", "conc_bin_z")
ENTROPY_FIELDS = ("h_x_bits", "h_z_bits", "sum_bits")
ORACLE_TOL = 1e-10
INVARIANT_TOL = 1e-9

DEFAULT_P = 0.3
DEFAULT_PHI = 0.0
DEFAULT_BINS = 51
DEFAULT_N_RANGE = "10:1e6:26"
DEFAULT_BIN_LIST = tuple(2**i for i in range(9))
ORACLE_GRID_P = (0.0, 0.2, 0.5, 0.7, 1.0)
ORACLE_GRID_PHI = (0.0, math.pi / 3, math.pi / 2, math.pi, 5 * math.pi / 4)


class ConfigError(ValueError):
    pass


class InvariantViolation(RuntimeError):
    pass


@dataclass(frozen=True)
class SweepConfig:
    p: float = DEFAULT_P
    phi: float = DEFAULT_PHI
    n_values: tuple[int, ...] = ()
    n_bins: tuple[int, ...] | None = None
    alpha: float | None = None
    base_bins: int = 1
    method: str = "exact"

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ConfigError(f"--p: {self.p} is not in [0, 1]")
        if not self.n_values:
            raise ConfigError("--n: at least one system size is required")
        if any(n < 1 for n in self.n_values):
            raise ConfigError("--n: system sizes must be positive")
        if any(b <= a for a, b in zip(self.n_values, self.n_values[1:])):
            raise ConfigError("--n: values must be strictly ascending")
        if (self.n_bins is None) == (self.alpha is None):
            raise ConfigError("exactly one of --bins and --alpha must be set")
        if self.n_bins is not None and any(b < 1 for b in self.n_bins):
            raise ConfigError("--bins: bin counts must be positive")
        if self.alpha is not None and self.alpha < 0:
            raise ConfigError("--alpha: must be >= 0")
        if self.base_bins < 1:
            raise ConfigError("--base-bins: must be positive")
        if self.method not in ("exact", "gaussian"):
            raise ConfigError(f"--method: unknown method {self.method!r}")


@dataclass(frozen=True)
class SweepRecord:
    n_spins: int
    n_bins: int
    method: str
    h_x_bits: float
    h_z_bits: float
    sum_bits: float
    conc_bin_x: int
    conc_bin_z: int


def _record(state: SpinCoherentState, n_bins: int, method: str) -> SweepRecord:
    scheme = BinningScheme(n_bins)
    try:
        hx = binned_entropy(state, scheme, "x", method)
        hz = binned_entropy(state, scheme, "z", method)
    except DomainError as exc:
        raise ConfigError(f"N={state.n_spins}, N_b={n_bins}: {exc}") from exc
    rec = SweepRecord(state.n_spins, n_bins, method, hx, hz, hx + hz,
                      concentration_bin(state.q, scheme), concentration_bin(state.p, scheme))
    check_record(rec)
    return rec


def check_record(rec: SweepRecord) -> None:
    if min(rec.h_x_bits, rec.h_z_bits) < 0:
        raise InvariantViolation(f"negative entropy in {rec}")
    cap = math.log2(rec.n_bins) + INVARIANT_TOL
    if rec.h_x_bits > cap or rec.h_z_bits > cap:
        raise InvariantViolation(f"entropy above log2(N_b) in {rec}")
    if abs(rec.sum_bits - rec.h_x_bits - rec.h_z_bits) > 1e-12:
        raise InvariantViolation(f"sum mismatch in {rec}")


def _sorted(records: list[SweepRecord]) -> list[SweepRecord]:
    return sorted(records, key=lambda r: (r.n_spins, r.n_bins))


def run_sweep_n(config: SweepConfig) -> list[SweepRecord]:
    if config.n_bins is None or len(config.n_bins) != 1:
        raise ConfigError("sweep-n needs a single fixed --bins value")
    nb = config.n_bins[0]
    return _sorted([_record(SpinCoherentState(n, config.p, config.phi), nb, config.method)
                    for n in config.n_values])


def run_sweep_bins(config: SweepConfig) -> list[SweepRecord]:
    if len(config.n_values) != 1:
        raise ConfigError("sweep-bins needs a single --n value")
    if config.n_bins is None:
        raise ConfigError("sweep-bins needs --bins")
    state = SpinCoherentState(config.n_values[0], config.p, config.phi)
    return _sorted([_record(state, nb, config.method) for nb in sorted(set(config.n_bins))])


def run_scaling(config: SweepConfig) -> list[SweepRecord]:
    if config.alpha is None:
        raise ConfigError("scaling needs --alpha")
    return _sorted([
        _record(SpinCoherentState(n, config.p, config.phi),
                scaled_bins(n, config.alpha, config.base_bins), config.method)
        for n in config.n_values
    ])


def _maybe(fn, *args):
    try:
        return fn(*args)
    except DomainError:
        return None


def run_point(n_spins: int, p: float, phi: float, n_bins: int, method: str = "exact") -> dict:
    """Every quantity the library computes for one configuration, entropies in bits."""
    state = SpinCoherentState(n_spins, p, phi)
    scheme = BinningScheme(n_bins)
    q = state.q
    hx_prod = product_basis_entropy(state, "x")
    hz_prod = product_basis_entropy(state, "z")
    prod_sum = eur_sum_product(state)
    bound = eur_product_bound(n_spins)
    hx_col = collective_entropy(state, "x")
    hz_col = collective_entropy(state, "z")
    lhs, rhs = robertson_bound_check(state)
    try:
        pmf_x = binned_pmf(state, scheme, "x", method)
        pmf_z = binned_pmf(state, scheme, "z", method)
        hx_bin = binned_entropy(state, scheme, "x", method)
        hz_bin = binned_entropy(state, scheme, "z", method)
    except DomainError as exc:
        raise ConfigError(str(exc)) from exc
    report = {
        "state": {"n_spins": n_spins, "p": state.p, "phi": state.phi, "q": q},
        "magnetization": dict(zip(("x", "y", "z"), magnetization_expectations(state))),
        "robertson": {"lhs": lhs, "rhs": rhs},
        "product": {
            "h_x_bits": hx_prod, "h_z_bits": hz_prod, "sum_bits": prod_sum,
            "bound_bits": bound, "saturated": abs(prod_sum - bound) <= INVARIANT_TOL,
        },
        "collective": {
            "h_x_bits": hx_col, "h_z_bits": hz_col, "sum_bits": hx_col + hz_col,
            "h_x_asymptotic_bits": _maybe(collective_entropy_asymptotic, n_spins, q),
            "h_z_asymptotic_bits": _maybe(collective_entropy_asymptotic, n_spins, state.p),
            "sum_asymptotic_bits": _maybe(degenerate_sum_asymptotic, n_spins, state.p, q),
            "moments_x": collective_moments(state, "x")._asdict(),
            "moments_z": collective_moments(state, "z")._asdict(),
        },
        "binned": {
            "n_bins": n_bins, "method": method,
            "pmf_x": pmf_x.probs.tolist(), "pmf_z": pmf_z.probs.tolist(),
            "h_x_bits": hx_bin, "h_z_bits": hz_bin, "sum_bits": hx_bin + hz_bin,
            "conc_bin_x": concentration_bin(q, scheme),
            "conc_bin_z": concentration_bin(state.p, scheme),
        },
    }
    if prod_sum < bound - INVARIANT_TOL:
        raise InvariantViolation(f"product entropy sum {prod_sum} below bound {bound}")
    if min(hx_col, hz_col, hx_bin, hz_bin) < 0:
        raise InvariantViolation("negative entropy")
    return report


@dataclass
class OracleCheck:
    name: str
    worst: float = 0.0

    def update(self, dev: float) -> None:
        self.worst = max(self.worst, float(dev))

    @property
    def passed(self) -> bool:
        return self.worst <= ORACLE_TOL


def oracle_check(max_n: int = 10, grid: Sequence[tuple[float, float]] | None = None) -> list[OracleCheck]:
    """Compare every closed form against the dense statevector for N = 1..max_n."""
    if max_n > oracle.get_cap():
        raise oracle.SizeCapError(f"max_n={max_n} exceeds the oracle cap of {oracle.get_cap()}")
    if max_n < 1:
        raise ConfigError("max_n must be >= 1")
    if grid is None:
        grid = [(p, phi) for p in ORACLE_GRID_P for phi in ORACLE_GRID_PHI]
    names = ("collective_pmf", "moments", "collective_entropy", "product_entropy",
             "magnetization", "robertson", "commutator_norm")
    checks = {name: OracleCheck(name) for name in names}
    for n in range(1, max_n + 1):
        ops = {d: oracle.magnetization_operator(n, d, dense=False) for d in "xyz"}
        comm = ops["x"] @ ops["z"] - ops["z"] @ ops["x"]
        if n <= 10:
            checks["commutator_norm"].update(abs(n * oracle.commutator_norm(n) - 0.5))
        for p, phi in grid:
            state = SpinCoherentState(n, p, phi)
            psi = oracle.build_product_state(state)
            for d in "xz":
                ref = oracle.weight_distribution(psi, d)
                dist = collective_pmf(state, d)
                checks["collective_pmf"].update(np.max(np.abs(ref.probs - dist.probs)))
                mom = collective_moments(state, d)
                checks["moments"].update(abs(oracle.expectation(psi, ops[d]).real - mom.mean))
                checks["moments"].update(abs(oracle.variance(psi, ops[d]) - mom.variance))
                checks["collective_entropy"].update(
                    abs(oracle.probs_entropy(ref.probs) - collective_entropy(state, d)))
                checks["product_entropy"].update(
                    abs(oracle.probs_entropy(oracle.product_basis_probs(psi, d))
                        - product_basis_entropy(state, d)))
            for d, val in zip("xyz", magnetization_expectations(state)):
                checks["magnetization"].update(abs(oracle.expectation(psi, ops[d]).real - val))
            lhs, rhs = robertson_bound_check(state)
            # compare variance products; a square root near zero amplifies roundoff
            o_lhs_sq = oracle.variance(psi, ops["x"]) * oracle.variance(psi, ops["z"])
            o_rhs = 0.5 * abs(oracle.expectation(psi, comm))
            checks["robertson"].update(max(abs(o_lhs_sq - lhs**2), abs(o_rhs - rhs)))
    return list(checks.values())


# ---------------------------------------------------------------- emission


def _scale(units: str) -> tuple[float, str]:
    if units == "bits":
        return 1.0, "bits"
    if units == "nats":
        return LN2, "nats"
    raise ConfigError(f"--units: unknown unit {units!r}")


def _rows(records: list[SweepRecord], units: str) -> tuple[list[str], list[dict]]:
    factor, suffix = _scale(units)
    header = [f.replace("bits", suffix) for f in CSV_FIELDS]
    rows = []
    for rec in records:
        d = asdict(rec)
        for f in ENTROPY_FIELDS:
            d[f] *= factor
        rows.append({h: d[f] for h, f in zip(header, CSV_FIELDS)})
    return header, rows


def format_records(records: list[SweepRecord], fmt: str = "csv", units: str = "bits") -> str:
    header, rows = _rows(records, units)
    if fmt == "json":
        return json.dumps(rows, indent=1) + "\n"
    if fmt != "csv":
        raise ConfigError(f"--format: unknown format {fmt!r}")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(format(v, ".17g") if isinstance(v, float) else v for v in row.values())
    return buf.getvalue()


def parse_records(text: str, fmt: str = "csv") -> list[dict]:
    """Read emitted sweep output back into dicts (numbers converted)."""
    if fmt == "json":
        return json.loads(text)
    out = []
    for row in csv.DictReader(io.StringIO(text)):
        out.append({k: (v if k == "method" else (int(v) if k in ("n_spins", "n_bins", "conc_bin_x", "conc_bin_z") else float(v)))
                    for k, v in row.items()})
    return out


def _convert_report(obj, factor: float, suffix: str):
    if isinstance(obj, dict):
        out = {}
        for k, v in obj.items():
            if k.endswith("_bits"):
                out[k[:-4] + suffix] = None if v is None else v * factor
            else:
                out[k] = _convert_report(v, factor, suffix)
        return out
    return obj


def format_report(report: dict, fmt: str = "json", units: str = "bits") -> str:
    factor, suffix = _scale(units)
    report = _convert_report(report, factor, suffix)
    if fmt == "json":
        return json.dumps(report, indent=1) + "\n"
    if fmt != "csv":
        raise ConfigError(f"--format: unknown format {fmt!r}")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["key", "value"])

    def walk(prefix, obj):
        if isinstance(obj, dict):
            for k, v in obj.items():
                walk(f"{prefix}.{k}" if prefix else k, v)
        elif isinstance(obj, list):
            for i, v in enumerate(obj, start=1):
                walk(f"{prefix}.{i}", v)
        else:
            writer.writerow([prefix, format(obj, ".17g") if isinstance(obj, float) else obj])

    walk("", report)
    return buf.getvalue()


# ---------------------------------------------------------------- argument parsing


def _parse_int(text: str) -> int:
    value = float(text)
    if not value.is_integer():
        raise ConfigError(f"{text!r} is not an integer")
    return int(value)


def parse_n_spec(specs: Sequence[str]) -> tuple[int, ...]:
    """Expand ``--n`` values: plain integers or ``lo:hi:points`` log-spaced ranges."""
    values: set[int] = set()
    for spec in specs:
        try:
            if ":" in spec:
                lo, hi, pts = spec.split(":")
                lo, hi, pts = float(lo), float(hi), _parse_int(pts)
                if lo < 1 or hi < lo or pts < 1:
                    raise ConfigError(f"--n {spec!r}: need 1 <= lo <= hi and points >= 1")
                grid = np.logspace(math.log10(lo), math.log10(hi), pts)
                values.update(int(round(v)) for v in grid)
            else:
                values.add(_parse_int(spec))
        except ValueError as exc:
            raise ConfigError(f"--n {spec!r}: {exc}") from exc
    return tuple(sorted(values))


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="spin-eur", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, n_default):
        sp.add_argument("--p", type=float, default=DEFAULT_P)
        sp.add_argument("--phi", type=float, default=DEFAULT_PHI)
        sp.add_argument("--n", action="append", default=None,
                        help=f"system size or lo:hi:points log range (default {n_default})")
        sp.add_argument("--method", choices=("exact", "gaussian"), default="exact")
        sp.add_argument("--format", choices=("csv", "json"), default="csv")
        sp.add_argument("--out", default="-")
        sp.add_argument("--units", choices=("bits", "nats"), default="bits")

    sp = sub.add_parser("sweep-n", help="entropy sum versus system size at fixed bins")
    common(sp, DEFAULT_N_RANGE)
    sp.add_argument("--bins", type=int, default=DEFAULT_BINS)

    sp = sub.add_parser("sweep-bins", help="entropy sum versus bin count at fixed N")
    common(sp, "100")
    sp.add_argument("--bins", type=int, action="append", default=None)

    sp = sub.add_parser("scaling", help="entropy sum with bins growing as N**alpha")
    common(sp, DEFAULT_N_RANGE)
    sp.add_argument("--alpha", type=float, required=True)
    sp.add_argument("--base-bins", type=int, default=1)

    sp = sub.add_parser("point", help="full report for one configuration")
    common(sp, "100")
    sp.add_argument("--bins", type=int, default=DEFAULT_BINS)
    sp.set_defaults(format="json")

    sp = sub.add_parser("oracle-check", help="closed forms versus dense statevector")
    sp.add_argument("--max-n", type=int, default=10)
    sp.add_argument("--p", type=float, action="append", default=None)
    sp.add_argument("--phi", type=float, action="append", default=None)
    sp.add_argument("--out", default="-")
    return parser


def _write(text: str, path: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="\n") as fh:
            fh.write(text)


def _run(args) -> int:
    if args.command == "oracle-check":
        ps = args.p or list(ORACLE_GRID_P)
        phis = args.phi or list(ORACLE_GRID_PHI)
        try:
            checks = oracle_check(args.max_n, [(p, phi) for p in ps for phi in phis])
        except DomainError as exc:
            raise ConfigError(str(exc)) from exc
        lines = [f"{c.name:20s} worst={c.worst:.3e} {'PASS' if c.passed else 'FAIL'}" for c in checks]
        ok = all(c.passed for c in checks)
        lines.append("oracle-check: " + ("PASS" if ok else "FAIL"))
        _write("\n".join(lines) + "\n", args.out)
        return EXIT_OK if ok else EXIT_ORACLE

    n_default = "100" if args.command in ("sweep-bins", "point") else DEFAULT_N_RANGE
    n_values = parse_n_spec(args.n or [n_default])

    if args.command == "point":
        if len(n_values) != 1:
            raise ConfigError("point needs a single --n value")
        report = run_point(n_values[0], args.p, args.phi, args.bins, args.method)
        _write(format_report(report, args.format, args.units), args.out)
        return EXIT_OK

    if args.command == "sweep-n":
        config = SweepConfig(args.p, args.phi, n_values, (args.bins,), None, 1, args.method)
        records = run_sweep_n(config)
    elif args.command == "sweep-bins":
        bins = tuple(args.bins) if args.bins else DEFAULT_BIN_LIST
        config = SweepConfig(args.p, args.phi, n_values, bins, None, 1, args.method)
        records = run_sweep_bins(config)
    else:
        config = SweepConfig(args.p, args.phi, n_values, None, args.alpha, args.base_bins, args.method)
        records = run_scaling(config)
    _write(format_records(records, args.format, args.units), args.out)
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return _run(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (DomainError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
