"""
Run configuration: a flat ``key = value`` document.

Keys carry at most one section prefix (``kinetics.G2s``). Values may carry a
unit suffix (``l = 5 A``, ``T_spot = 70 mK``); they are converted once, here,
to the unit each model expects. Every omitted key takes its default.
"""

import difflib
import math
import re
from dataclasses import dataclass, field

from .errors import ConfigError, DomainError
from .kinetics import KineticsParams
from .shift import ShiftParams

COMMANDS = ("levels", "pair-check", "kinetics", "shift", "sweep", "compare")
FORMATS = ("csv", "kv")

# unit tables: suffix -> factor into the internal unit of the dimension
UNITS = {
    "length": {"m": 1.0, "cm": 1e-2, "mm": 1e-3, "um": 1e-6, "nm": 1e-9, "a": 1e-10, "å": 1e-10,
               "angstrom": 1e-10, "pm": 1e-12},
    "area": {"cm2": 1.0, "cm^2": 1.0, "m2": 1e4, "m^2": 1e4, "mm2": 1e-2, "mm^2": 1e-2},
    "density": {"cm-2": 1.0, "cm^-2": 1.0, "/cm2": 1.0, "/cm^2": 1.0, "m-2": 1e-4, "m^-2": 1e-4},
    "temperature": {"k": 1.0, "mk": 1e-3},
    "field": {"t": 1.0, "mt": 1e-3, "g": 1e-4},
    "frequency": {"hz": 1.0, "khz": 1e3, "mhz": 1e6, "ghz": 1e9},
    "rate": {"s-1": 1.0, "s^-1": 1.0, "/s": 1.0, "hz": 1.0},
    "rate2d": {"cm2/s": 1.0, "cm^2/s": 1.0, "cm2s-1": 1.0, "cm^2s^-1": 1.0, "m2/s": 1e4, "m^2/s": 1e4},
    "kab_prefactor": {"cm2k-3/2s-1": 1.0, "cm^2k^-3/2s^-1": 1.0, "cm^2k^(-3/2)s^-1": 1.0},
    "vertex": {"kcm2": 1.0, "kcm^2": 1.0},
    "slope": {"hzcm2": 1.0, "hzcm^2": 1.0},
    "time": {"s": 1.0, "ms": 1e-3, "min": 60.0},
    "none": {},
}

_NUMBER = re.compile(r"^([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)\s*(.*)$")


@dataclass(frozen=True)
class Key:
    default: object
    kind: str = "float"  # float | int | str | bool
    dim: str = "none"
    lo: float | None = None
    hi: float | None = None
    positive: bool = False
    nullable: bool = False
    choices: tuple = ()


_K = KineticsParams()
_S = ShiftParams()

SCHEMA = {
    "command": Key(None, "str", choices=COMMANDS, nullable=True),
    "field_B": Key(4.6, dim="field", lo=0.0, hi=1e3),
    # kinetics
    "kinetics.wall_area": Key(_K.wall_area, dim="area", lo=0.0),
    "kinetics.spot_area": Key(_K.spot_area, dim="area", positive=True),
    "kinetics.G1": Key(_K.G1, dim="rate", lo=0.0),
    "kinetics.G1s": Key(_K.G1s, dim="rate", lo=0.0),
    "kinetics.G2": Key(_K.G2, dim="rate2d", lo=0.0),
    "kinetics.G2s": Key(_K.G2s, dim="rate2d", lo=0.0),
    "kinetics.Kab_prefactor": Key(_K.Kab_prefactor, dim="kab_prefactor", lo=0.0),
    "kinetics.K_abs": Key(_K.K_abs, dim="rate2d", positive=True, nullable=True),
    "kinetics.E_a": Key(_K.E_a, dim="temperature", positive=True),
    "kinetics.T_spot": Key(_K.T_spot, dim="temperature", positive=True),
    "kinetics.T_walls": Key(_K.T_walls, dim="temperature", positive=True),
    "kinetics.Phi_a": Key(_K.Phi_a, dim="rate", lo=0.0),
    "kinetics.sigma_bs": Key(1e12, dim="density", positive=True),
    "kinetics.trajectory": Key(False, "bool"),
    "kinetics.trajectory_out": Key(None, "str", nullable=True),
    "kinetics.relaxation_times": Key(20.0, positive=True, hi=1e6),
    "kinetics.tol": Key(1e-6, positive=True, hi=0.1),
    # shift
    "shift.a_t": Key(_S.a_t, dim="length", positive=True),
    "shift.a_s": Key(_S.a_s, dim="length", positive=True),
    "shift.scattering_difference": Key(None, dim="length", nullable=True),
    "shift.l": Key(_S.l, dim="length", positive=True),
    "shift.vertex_Ut": Key(_S.vertex_Ut, dim="vertex", lo=0.0, nullable=True),
    "shift.E_a": Key(_S.E_a, dim="temperature", positive=True),
    "shift.wall_shift_A0_over_h": Key(None, dim="frequency", nullable=True),
    "shift.g2": Key(_S.g2, lo=0.0, hi=2.0),
    "shift.C0": Key(_S.C0, dim="frequency"),
    "shift.C1": Key(_S.C1, dim="slope", positive=True),
    # levels
    "levels.B_min": Key(0.0, dim="field", lo=0.0, hi=1e3),
    "levels.B_max": Key(None, dim="field", lo=0.0, hi=1e3, nullable=True),
    "levels.points": Key(11, "int", lo=1, hi=1e6),
    "levels.scale": Key("linear", "str", choices=("linear", "log")),
    # sweep
    "sweep.variable": Key("kinetics.sigma_bs", "str"),
    "sweep.min": Key(1e11),
    "sweep.max": Key(1e13),
    "sweep.points": Key(50, "int", lo=2, hi=1e6),
    "sweep.scale": Key("log", "str", choices=("linear", "log")),
    "sweep.workers": Key(1, "int", lo=1, hi=256),
    # output
    "output.path": Key(None, "str", nullable=True),
    "output.format": Key("csv", "str", choices=FORMATS),
}

SWEEP_ALIASES = {"sigma_bs": "kinetics.sigma_bs", "B": "field_B"}


def sweepable_keys():
    return tuple(k for k, spec in SCHEMA.items() if spec.kind == "float")


@dataclass(frozen=True)
class SweepSpec:
    variable: str
    min: float
    max: float
    points: int
    scale: str
    workers: int = 1


@dataclass(frozen=True)
class RunConfig:
    command: str | None
    field_B: float
    kinetics: KineticsParams
    shift: ShiftParams
    sigma_bs: float
    sweep: SweepSpec
    output_path: str | None = None
    output_format: str = "csv"
    values: dict = field(default_factory=dict, compare=False, repr=False)

    def option(self, key):
        return self.values[key]

    def with_value(self, key, value):
        """Rebuild the config with one key changed (used by sweeps)."""
        vals = dict(self.values)
        vals[key] = value
        return build_config(vals)


def _suggest(key):
    close = difflib.get_close_matches(key, SCHEMA, n=1, cutoff=0.6)
    if not close:
        # try the bare name under any section, e.g. "G2ss" -> "kinetics.G2s"
        bare = {k.split(".")[-1]: k for k in SCHEMA}
        hit = difflib.get_close_matches(key.split(".")[-1], bare, n=1, cutoff=0.6)
        close = [bare[hit[0]]] if hit else []
    return f"; did you mean {close[0]!r}?" if close else ""


def _resolve_key(key, line):
    if key in SCHEMA:
        return key
    # allow the bare name when it is unambiguous
    matches = [k for k in SCHEMA if k.split(".")[-1] == key]
    if len(matches) == 1 and "." not in key:
        return matches[0]
    raise ConfigError(f"unknown key {key!r}{_suggest(key)}", line)


def _normalize_unit(unit):
    return re.sub(r"[\s*·⋅]", "", unit).lower()


def parse_value(key, raw, line=None):
    """Convert the text ``raw`` for ``key`` into its internal-unit value."""
    spec = SCHEMA[key]
    text = raw.strip()
    if spec.nullable and text.lower() in ("none", "null", ""):
        return None
    if spec.kind == "str":
        if spec.choices and text not in spec.choices:
            raise ConfigError(f"{key} must be one of {list(spec.choices)}, got {text!r}", line)
        return text
    if spec.kind == "bool":
        low = text.lower()
        if low in ("true", "yes", "1", "on"):
            return True
        if low in ("false", "no", "0", "off"):
            return False
        raise ConfigError(f"{key} expects a boolean, got {text!r}", line)

    m = _NUMBER.match(text)
    if not m:
        raise ConfigError(f"{key} expects a number, got {text!r}", line)
    number, unit = m.groups()
    value = float(number)
    if unit:
        table = UNITS[spec.dim]
        factor = table.get(_normalize_unit(unit))
        if factor is None:
            allowed = ", ".join(sorted(table)) or "none (dimensionless)"
            raise ConfigError(f"{key}: unknown unit {unit!r}; allowed: {allowed}", line)
        value *= factor
    if spec.kind == "int":
        if value != int(value):
            raise ConfigError(f"{key} expects an integer, got {text!r}", line)
        value = int(value)
    _check_bounds(key, spec, value, line)
    return value


def _check_bounds(key, spec, value, line):
    if not math.isfinite(value):
        raise ConfigError(f"{key} must be finite, got {value!r}", line)
    if spec.positive and not value > 0:
        raise ConfigError(f"{key} must be > 0, got {value!r}", line)
    lo = spec.lo if spec.lo is not None else -math.inf
    hi = spec.hi if spec.hi is not None else math.inf
    if not lo <= value <= hi:
        raise ConfigError(f"{key}={value!r} outside allowed range [{_fmt(lo)}, {_fmt(hi)}]", line)


def _fmt(x):
    return f"{x:g}"


def _split_line(text, line):
    body = text.split("#", 1)[0].strip()
    if not body:
        return None
    if "=" not in body:
        raise ConfigError(f"syntax error: expected 'key = value', got {body!r}", line)
    key, value = body.split("=", 1)
    key = key.strip()
    if not key:
        raise ConfigError("syntax error: empty key", line)
    return key, value


def parse_config(text, command=None, overrides=()):
    """Parse a config document, then apply ``--set`` style overrides.

    ``overrides`` are ``"key=value"`` strings; errors in them are reported
    with the argument position instead of a line number.
    """
    given = {}
    where = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        item = _split_line(line, lineno)
        if item is None:
            continue
        key = _resolve_key(item[0], lineno)
        if key in given:
            raise ConfigError(f"duplicate key {key!r} (first set on line {where[key]})", lineno)
        given[key] = parse_value(key, item[1], lineno)
        where[key] = lineno

    for pos, item in enumerate(overrides, start=1):
        try:
            parsed = _split_line(item, None)
            if parsed is None:
                raise ConfigError(f"empty --set value {item!r}")
            key = _resolve_key(parsed[0], None)
            given[key] = parse_value(key, parsed[1])
        except ConfigError as exc:
            raise ConfigError(f"--set #{pos}: {exc}") from None

    if command is not None:
        if command not in COMMANDS:
            raise ConfigError(f"unknown command {command!r}; expected one of {list(COMMANDS)}")
        given["command"] = command

    values = {k: spec.default for k, spec in SCHEMA.items()}
    values.update(given)
    return build_config(values)


def build_config(values):
    """Assemble a RunConfig from a complete flat value mapping."""
    kin = {k.split(".", 1)[1]: v for k, v in values.items()
           if k.startswith("kinetics.") and k.split(".", 1)[1] in KineticsParams.__dataclass_fields__}
    shf = {k.split(".", 1)[1]: v for k, v in values.items()
           if k.startswith("shift.") and k.split(".", 1)[1] in ShiftParams.__dataclass_fields__}
    diff = values.get("shift.scattering_difference")
    if diff is not None:
        shf["a_s"] = shf["a_t"] - diff
    if shf["a_t"] <= shf["a_s"]:
        raise ConfigError(f"shift.a_t ({shf['a_t']:g} m) must exceed shift.a_s ({shf['a_s']:g} m)")
    if kin["T_spot"] > kin["T_walls"]:
        raise ConfigError(f"kinetics.T_spot ({kin['T_spot']:g} K) must not exceed kinetics.T_walls ({kin['T_walls']:g} K)")

    variable = SWEEP_ALIASES.get(values["sweep.variable"], values["sweep.variable"])
    if variable not in sweepable_keys():
        raise ConfigError(f"sweep.variable {variable!r} is not a numeric parameter{_suggest(variable)}")
    if values["sweep.scale"] == "log" and not 0 < values["sweep.min"] <= values["sweep.max"]:
        raise ConfigError("log sweep needs 0 < sweep.min <= sweep.max")
    if values["sweep.min"] > values["sweep.max"]:
        raise ConfigError("sweep.min must not exceed sweep.max")

    try:
        kinetics = KineticsParams(**kin)
        shift = ShiftParams(**shf)
    except DomainError as exc:
        raise ConfigError(str(exc)) from None

    return RunConfig(
        command=values["command"],
        field_B=values["field_B"],
        kinetics=kinetics,
        shift=shift,
        sigma_bs=values["kinetics.sigma_bs"],
        sweep=SweepSpec(
            variable=variable,
            min=values["sweep.min"],
            max=values["sweep.max"],
            points=values["sweep.points"],
            scale=values["sweep.scale"],
            workers=values["sweep.workers"],
        ),
        output_path=values["output.path"],
        output_format=values["output.format"],
        values=dict(values),
    )


# Published defaults, checked by the test suite against SCHEMA.
DEFAULTS_MANIFEST = {
    "field_B": 4.6,
    "kinetics.wall_area": 100.0,
    "kinetics.spot_area": 0.32,
    "kinetics.G1": 0.1,
    "kinetics.G2s": 1.4e-13,
    "kinetics.Kab_prefactor": 2.8e-9,
    "kinetics.K_abs": 5e-11,
    "kinetics.E_a": 1.14,
    "kinetics.T_spot": 0.07,
    "kinetics.T_walls": 0.2,
    "kinetics.Phi_a": 0.0,
    "kinetics.G2": 0.0,
    "shift.a_t": 0.72e-10,
    "shift.l": 5e-10,
    "shift.vertex_Ut": 5e-15,
    "shift.E_a": 1.14,
    "shift.g2": 2.0,
    "shift.C0": -24.79e3,
    "shift.C1": 1.52e-9,
}
