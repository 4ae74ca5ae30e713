"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 numerical failure, 3 data-file error.
"""
from __future__ import annotations

import argparse
import json
import math
import re
import sys
from contextlib import contextmanager
from typing import Iterable, Optional, Sequence

from . import __version__
from .constants import CODATA, UnitError, to_si
from .experiment import (
    ParticleGeometry,
    alpha_of,
    mass_for_alpha,
    rayleigh_rate,
    sphere_diameter,
)
from .figures import emit_fig2_data, emit_fig3_data
from .materials import MaterialDatabase, MaterialDataError, MaterialNotFoundError
from .oracle import OracleCapabilityError, OracleConvergenceError, verification_suite
from .polynomial import dump_coefficients, p_poly
from .quadrature import QuadratureError
from .spectrum import DEFAULT_EPSREL, TrapState, delta_omega_sn, transition_shift

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC, EXIT_DATA = 0, 1, 2, 3

_QUANTITY = re.compile(r"^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)\s*([A-Za-z][A-Za-z0-9/]*)\s*$")


class UsageError(Exception):
    pass


def parse_quantity(text: str, dimension: str, flag: str) -> float:
    """'10Hz' -> 62.83... (SI). The unit suffix is mandatory."""
    m = _QUANTITY.match(text)
    if not m:
        raise UsageError(f"{flag}: expected a number with a unit suffix, got {text!r}")
    value, unit = float(m.group(1)), m.group(2)
    try:
        si, dim = to_si(value, unit)
    except UnitError as exc:
        raise UsageError(f"{flag}: {exc}") from None
    if dim != dimension:
        raise UsageError(f"{flag}: {unit!r} is a {dim} unit, expected {dimension}")
    if not si > 0:
        raise UsageError(f"{flag}: must be positive, got {text!r}")
    return si


def format_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return f"{value:.11e}"
    return str(value)


def _csv_field(text: str) -> str:
    if any(c in text for c in ',"\n'):
        return '"' + text.replace('"', '""') + '"'
    return text


def _json_value(value) -> str:
    if isinstance(value, float):
        return "null" if not math.isfinite(value) else format_value(value)
    if isinstance(value, (bool, int)):
        return format_value(value)
    return json.dumps(str(value))


class RecordWriter:
    """CSV with a header row, or one flat JSON object per line; key order preserved."""

    def __init__(self, stream, fmt: str):
        self.stream = stream
        self.fmt = fmt
        self.header: Optional[list[str]] = None

    def write(self, record: dict) -> None:
        if self.fmt == "csv":
            if self.header is None:
                self.header = list(record)
                self.stream.write(",".join(self.header) + "\n")
            elif list(record) != self.header:
                raise ValueError("record keys changed mid-stream")
            self.stream.write(",".join(_csv_field(format_value(record[k])) for k in self.header) + "\n")
        else:
            body = ", ".join(f"{json.dumps(k)}: {_json_value(v)}" for k, v in record.items())
            self.stream.write("{" + body + "}\n")

    def write_all(self, records: Iterable[dict]) -> int:
        count = 0
        for rec in records:
            self.write(rec)
            count += 1
        return count


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "jsonl"), default="csv", help="output format")
    common.add_argument("--output", "-o", default="-", help="output path, '-' for stdout")
    common.add_argument("--materials", default=None,
                        help="material data file (default: $SNSPEC_MATERIALS or the bundled table)")
    common.add_argument("--epsrel", type=float, default=DEFAULT_EPSREL, help="quadrature relative tolerance")

    p = _Parser(prog="snspec", description="Self-gravity spectrum of a harmonically trapped particle.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("materials", parents=[common], help="list the material database")

    s = sub.add_parser("shift", parents=[common], help="frequency shift of one transition")
    s.add_argument("--material", required=True)
    s.add_argument("--omega0", required=True, help="trap frequency, e.g. 10Hz or 62.83rad/s")
    s.add_argument("--mass", required=True, help="particle mass, e.g. 1e15amu or 1.6e-12kg")
    s.add_argument("--n1", type=int, default=0)
    s.add_argument("--n2", type=int, default=1)

    s = sub.add_parser("spectrum", parents=[common], help="g(n, n+1, alpha) curves on an alpha grid")
    s.add_argument("--alpha-min", type=float, default=0.1)
    s.add_argument("--alpha-max", type=float, default=100.0)
    s.add_argument("--points", type=int, default=40)
    s.add_argument("--n-max", type=int, default=13)

    s = sub.add_parser("scan", parents=[common], help="adjacent-line spectrum over a mass range")
    s.add_argument("--material", default="osmium")
    s.add_argument("--omega0", default="10Hz")
    s.add_argument("--mass-min", default="1e13amu")
    s.add_argument("--mass-max", default="1e18amu")
    s.add_argument("--points", type=int, default=41)
    s.add_argument("--n-max", type=int, default=13)
    s.add_argument("--workers", type=int, default=1)

    s = sub.add_parser("size", parents=[common], help="mass, alpha and sphere diameter for a trap")
    s.add_argument("--material", required=True)
    s.add_argument("--omega0", required=True)
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--alpha", type=float)
    g.add_argument("--mass")

    s = sub.add_parser("rayleigh", parents=[common], help="blackbody Rayleigh scattering rate")
    s.add_argument("--temp", required=True, help="temperature, e.g. 0.1K or 100mK")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--disc", help="DIAMETER,THICKNESS, e.g. 3e-6m,1e-6m")
    g.add_argument("--sphere", help="RADIUS, e.g. 1um")

    sub.add_parser("verify", parents=[common], help="run the oracle cross-checks")

    s = sub.add_parser("ppoly", help="dump exact P_n coefficients (power numerator denominator)")
    s.add_argument("n", type=int)
    s.add_argument("--output", "-o", default="-")
    return p


def _database(args) -> MaterialDatabase:
    return MaterialDatabase.load(args.materials)


def _cmd_materials(args, writer):
    for m in _database(args):
        writer.write({
            "name": m.name,
            "atomic_mass_amu": m.atomic_mass,
            "density_g_cm3": m.density / 1e3,
            "sigma_pm": m.sigma * 1e12,
            "temperature_mK": m.reference_temperature * 1e3,
            "delta_omega_sn_at_1rad_s": delta_omega_sn(m, 1.0),
        })
    return EXIT_OK


def _cmd_shift(args, writer):
    mat = _database(args)[args.material]
    omega0 = parse_quantity(args.omega0, "frequency", "--omega0")
    mass = parse_quantity(args.mass, "mass", "--mass")
    if not args.n2 > args.n1 >= 0:
        raise UsageError("--n1/--n2: need n2 > n1 >= 0")
    r = transition_shift(mat, TrapState(mass, omega0, mat.sigma), args.n1, args.n2, args.epsrel)
    writer.write({
        "material": mat.name,
        "omega0_rad_s": omega0,
        "mass_kg": mass,
        "mass_amu": mass / CODATA.amu,
        "n1": r.n1,
        "n2": r.n2,
        "alpha": r.alpha,
        "f_tilde_n1": r.f_tilde_n1,
        "f_tilde_n2": r.f_tilde_n2,
        "g": r.g,
        "delta_omega_sn_rad_s": r.delta_omega_sn,
        "delta_omega_rad_s": r.delta_omega,
        "delta_f_hz": r.delta_f,
        "quadrature_error": r.quadrature_error_estimate,
        "epsrel": args.epsrel,
    })
    return EXIT_OK


def _cmd_spectrum(args, writer):
    failed = 0
    for rec in emit_fig2_data(args.alpha_min, args.alpha_max, args.points, args.n_max, args.epsrel):
        if not rec["ok"]:
            failed += 1
            print(f"snspec: quadrature failed at alpha={rec['alpha']:.6g}, n1={rec['n1']}", file=sys.stderr)
        writer.write(rec)
    return EXIT_NUMERIC if failed else EXIT_OK


def _cmd_scan(args, writer):
    mat = _database(args)[args.material]
    omega0 = parse_quantity(args.omega0, "frequency", "--omega0")
    lo = parse_quantity(args.mass_min, "mass", "--mass-min")
    hi = parse_quantity(args.mass_max, "mass", "--mass-max")
    if not lo < hi:
        raise UsageError("--mass-min must be below --mass-max")
    failed = 0
    for rec in emit_fig3_data(mat, omega0, lo, hi, args.points, args.n_max, args.epsrel, args.workers):
        if rec["regime"] == "failed":
            failed += 1
            print(f"snspec: quadrature failed at mass={rec['mass_amu']:.6g} amu", file=sys.stderr)
        writer.write(rec)
    return EXIT_NUMERIC if failed else EXIT_OK


def _cmd_size(args, writer):
    mat = _database(args)[args.material]
    omega0 = parse_quantity(args.omega0, "frequency", "--omega0")
    if args.alpha is not None:
        if not args.alpha > 0:
            raise UsageError("--alpha must be positive")
        mass = mass_for_alpha(args.alpha, omega0, mat.sigma)
    else:
        mass = parse_quantity(args.mass, "mass", "--mass")
    writer.write({
        "material": mat.name,
        "omega0_rad_s": omega0,
        "alpha": alpha_of(mass, omega0, mat.sigma),
        "mass_kg": mass,
        "mass_amu": mass / CODATA.amu,
        "sphere_diameter_m": sphere_diameter(mass, mat.density),
        "delta_omega_sn_rad_s": delta_omega_sn(mat, omega0),
    })
    return EXIT_OK


def _cmd_rayleigh(args, writer):
    T = parse_quantity(args.temp, "temperature", "--temp")
    if args.disc is not None:
        parts = args.disc.split(",")
        if len(parts) != 2:
            raise UsageError("--disc: expected DIAMETER,THICKNESS")
        geom = ParticleGeometry.disc(parse_quantity(parts[0], "length", "--disc"),
                                     parse_quantity(parts[1], "length", "--disc"))
    else:
        geom = ParticleGeometry.sphere(parse_quantity(args.sphere, "length", "--sphere"))
    est = rayleigh_rate(T, geom)
    writer.write({
        "shape": geom.shape,
        "temperature_K": T,
        "volume_m3": est.volume,
        "chi_m3": est.chi,
        "lambda_T_m": est.lambda_T,
        "gamma_R_per_s": est.gamma_R,
        "gamma_R_rounded_per_s": est.gamma_R_rounded,
    })
    return EXIT_OK


def _cmd_verify(args, writer):
    status = EXIT_OK
    for report in verification_suite():
        rec = report.as_record()
        # settings differ per quantity; keep a fixed column set
        row = {k: rec[k] for k in ("quantity", "analytic_value", "oracle_value",
                                   "relative_discrepancy", "threshold", "passed")}
        writer.write(row)
        if not report.passed:
            status = EXIT_NUMERIC
    return status


_COMMANDS = {
    "materials": _cmd_materials,
    "shift": _cmd_shift,
    "spectrum": _cmd_spectrum,
    "scan": _cmd_scan,
    "size": _cmd_size,
    "rayleigh": _cmd_rayleigh,
    "verify": _cmd_verify,
}


@contextmanager
def _open_output(path: str):
    if path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def run(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # --help/--version exit 0, parse errors exit EXIT_USAGE
        return int(exc.code or 0)
    try:
        if args.command == "ppoly":
            if args.n < 0:
                raise UsageError("n must be non-negative")
            with _open_output(args.output) as out:
                out.write(dump_coefficients(p_poly(args.n)))
            return EXIT_OK
        if not args.epsrel > 0:
            raise UsageError("--epsrel must be positive")
        with _open_output(args.output) as out:
            return _COMMANDS[args.command](args, RecordWriter(out, args.format))
    except UsageError as exc:
        print(f"snspec: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except MaterialNotFoundError as exc:
        print(f"snspec: --material: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except MaterialDataError as exc:
        print(f"snspec: material data: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (QuadratureError, OracleConvergenceError) as exc:
        print(f"snspec: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ValueError, OracleCapabilityError) as exc:
        print(f"snspec: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
