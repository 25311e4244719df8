"""
Command-line entry point::

    hshift <command> [--config PATH] [--set key=value ...] [--out PATH] [--format csv|kv]

Exit status: 0 on success, 2 on configuration errors, 3 on domain errors.
"""

import argparse
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import hyperfine, kinetics, pair_spin, shift
from .config import COMMANDS, FORMATS, parse_config
from .constants import default_constants
from .errors import ConfigError, DomainError
from .output import Table, emit_table

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DOMAIN = 3

# Values quoted alongside the model in the compare table.
QUOTED_BC_SLOPE = -1.2e-7  # Hz cm^2
QUOTED_WALL_OFFSET = -420.0  # Hz
QUOTED_WALL_SLOPE = 2.3e-10  # Hz cm^2
QUOTED_WALL_COEFFICIENT = -1e-14  # cm^2
QUOTED_ISOTHERM_RATIO = 3e4
QUOTED_KINETICS_SLOPE = 3e-3
QUOTED_RATIO_TO_C1 = 0.3


@dataclass
class CommandResult:
    table: Table
    trajectory: Table | None = None


def _grid(lo, hi, n, scale):
    if scale == "log":
        return np.geomspace(lo, hi, n)
    return np.linspace(lo, hi, n)


def _levels(cfg):
    c = default_constants()
    b_max = cfg.option("levels.B_max")
    b_max = cfg.field_B if b_max is None else b_max
    b_min = cfg.option("levels.B_min")
    n = cfg.option("levels.points")
    scale = cfg.option("levels.scale")
    if scale == "log" and b_min <= 0:
        raise ConfigError("levels.scale=log needs levels.B_min > 0")
    if b_min > b_max:
        raise ConfigError("levels.B_min must not exceed levels.B_max")
    fields = [b_max] if n == 1 else _grid(b_min, b_max, n, scale)
    return CommandResult(Table(hyperfine.LEVEL_COLUMNS, hyperfine.level_table(c, fields), "levels"))


PAIR_COLUMNS = (
    "field_T", "drive", "singlet_projection_norm", "odd_F_projection_norm",
    "antisymmetric_projection_norm", "final_state", "S2_final", "I2_final", "coupling_abs",
)


def _pair_check(cfg):
    spec = hyperfine.eigensystem(default_constants(), cfg.field_B)
    S2 = pair_spin.collective_operator("S2")
    I2 = pair_spin.collective_operator("I2")
    bb = pair_spin.pair_basis_state(spec, "b", "b")
    rows = []
    for drive, partner in (("electron", "c"), ("nuclear", "a")):
        rep = pair_spin.forbiddenness_check(spec, drive)
        final = pair_spin.symmetrized_pair_state(spec, "b", partner)
        rows.append([
            cfg.field_B, drive, rep.singlet_projection_norm, rep.odd_F_projection_norm,
            rep.antisymmetric_projection_norm, final.label,
            pair_spin.expectation_value(final, S2), pair_spin.expectation_value(final, I2),
            abs(pair_spin.drive_coupling(bb, final, drive)),
        ])
    return CommandResult(Table(PAIR_COLUMNS, rows, "pair-check"))


KINETICS_COLUMNS = (
    "sigma_bs", "sigma_b", "adsorption_ratio", "alpha", "K_abs", "intercept", "slope",
    "sigma_as_analytic", "sigma_as_numeric", "closure_deviation", "relaxation_time_s",
)


def _kinetics(cfg):
    k = cfg.kinetics
    sbs = cfg.sigma_bs
    analytic = kinetics.steady_state_sigma_as(k, sbs)
    numeric = kinetics.steady_state_numeric(k, sbs)
    tau = kinetics.relaxation_time(k, sbs)
    row = [
        sbs, sbs / k.isotherm, k.isotherm, kinetics.isotherm_alpha(k), k.kab_spot,
        kinetics.steady_state_intercept(k), kinetics.steady_state_slope(k),
        analytic, numeric, numeric / analytic - 1.0, tau,
    ]
    traj = None
    if cfg.option("kinetics.trajectory"):
        tr = kinetics.integrate_kinetics(
            k, kinetics.SurfaceDensities.from_isotherm(k, sbs),
            cfg.option("kinetics.relaxation_times") * tau, cfg.option("kinetics.tol"),
        )
        traj = Table(kinetics.TRAJECTORY_COLUMNS, tr.rows(), "trajectory")
    return CommandResult(Table(KINETICS_COLUMNS, [row], "kinetics"), traj)


def _shift(cfg):
    b = shift.ab_shift(cfg.shift, cfg.kinetics, cfg.sigma_bs)
    return CommandResult(Table(shift.ShiftBreakdown.columns(), [b.row()], "shift"))


def _sweep_point(cfg, variable, x):
    point = cfg.with_value(variable, float(x))
    sbs = point.sigma_bs
    b = shift.ab_shift(point.shift, point.kinetics, sbs)
    return [float(x), kinetics.steady_state_sigma_as(point.kinetics, sbs), b.delta_nu_ab, *b.row()]


def _sweep(cfg):
    sw = cfg.sweep
    xs = _grid(sw.min, sw.max, sw.points, sw.scale)
    columns = (sw.variable, "sigma_as", "delta_nu_ab_hz", *shift.ShiftBreakdown.columns())
    if sw.workers > 1:
        with ThreadPoolExecutor(max_workers=sw.workers) as pool:
            # map yields in submission order
            rows = list(pool.map(lambda x: _sweep_point(cfg, sw.variable, x), xs))
    else:
        rows = [_sweep_point(cfg, sw.variable, x) for x in xs]
    return CommandResult(Table(columns, rows, "sweep"))


def _compare(cfg):
    c = default_constants()
    p, k = cfg.shift, cfg.kinetics
    ref = shift.experiment_reference()
    b = shift.ab_shift(p, k, cfg.sigma_bs, c)
    p60 = p.with_scattering_difference(shift.SCATTERING_DIFFERENCE_REPORTED)
    zero_field = 2 * ref.C0.value / (1 + c.gyromagnetic_ratio)
    rows = [
        ["ratio_to_C1", b.ratio_to_experiment, QUOTED_RATIO_TO_C1],
        ["total_slope_hz_cm2", b.total_slope, ref.C1.value],
        ["pressure_slope_hz_cm2", b.pressure_term_slope, None],
        ["wall_slope_hz_cm2", b.wall_term_slope, QUOTED_WALL_SLOPE],
        ["wall_shift_coefficient_cm2", shift.wall_shift_coefficient(p, c), QUOTED_WALL_COEFFICIENT],
        ["bc_slope_hz_cm2", shift.bc_shift_slope(p, k, c), QUOTED_BC_SLOPE],
        ["kinetics_slope", kinetics.steady_state_slope(k), QUOTED_KINETICS_SLOPE],
        ["wall_offset_hz", b.wall_offset_from_a, QUOTED_WALL_OFFSET],
        ["wall_offset_60pm_hz", shift.wall_offset_from_a(p60, k, c), QUOTED_WALL_OFFSET],
        ["adsorption_ratio", k.isotherm, QUOTED_ISOTHERM_RATIO],
        ["alpha", kinetics.isotherm_alpha(k), None],
        ["triplet_vertex_formula_K_cm2", shift.triplet_vertex_formula(p, c), shift.triplet_vertex(p, c)],
        ["zero_field_wall_shift_hz", zero_field, ref.wall_shift_4He.value],
    ]
    return CommandResult(Table(("quantity", "model", "reference"), rows, "compare"))


_DISPATCH = {
    "levels": _levels,
    "pair-check": _pair_check,
    "kinetics": _kinetics,
    "shift": _shift,
    "sweep": _sweep,
    "compare": _compare,
}


def run_command(cfg):
    """Evaluate the configured command; returns a CommandResult."""
    if cfg.command not in _DISPATCH:
        raise ConfigError(f"no command given; expected one of {list(COMMANDS)}")
    return _DISPATCH[cfg.command](cfg)


def _write(data, path):
    if path is None:
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        with open(path, "wb") as fh:
            fh.write(data)


def build_parser():
    ap = argparse.ArgumentParser(prog="hshift", description="Hyperfine shift model for 2D atomic hydrogen.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--config", metavar="PATH", help="key = value config document")
    ap.add_argument("--set", dest="overrides", action="append", default=[], metavar="KEY=VALUE",
                    help="override one config key (repeatable)")
    ap.add_argument("--out", metavar="PATH", help="output file (default: stdout)")
    ap.add_argument("--format", choices=FORMATS, help="output format (default: csv)")
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        text = ""
        if args.config:
            try:
                with open(args.config, encoding="utf-8") as fh:
                    text = fh.read()
            except OSError as exc:
                raise ConfigError(f"cannot read config {args.config!r}: {exc.strerror}") from None
        cfg = parse_config(text, command=args.command, overrides=args.overrides)
        fmt = args.format or cfg.output_format
        out = args.out or cfg.output_path
        result = run_command(cfg)
        _write(emit_table(result.table, fmt), out)
        if result.trajectory is not None:
            _write(emit_table(result.trajectory, "csv"), cfg.option("kinetics.trajectory_out"))
    except ConfigError as exc:
        print(f"hshift: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except DomainError as exc:
        print(f"hshift: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
