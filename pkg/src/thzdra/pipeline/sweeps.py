"""Table-producing sweep driver (CSV with ``#`` metadata lines)."""

import csv
import io
from dataclasses import dataclass

import numpy as np

from ..constants import ELEMENTARY_CHARGE, TIME_CONVENTION
from ..errors import ConfigError, ThzDraError
from ..graphene import GrapheneSheet
from ..multilayer import HybridStackTemplate, SweepPoint, hybrid_mode, sweep
from ..multilayer.solver import FD_STEP, MAX_ITER, RESIDUAL_TOL, STEP_TOL
from ..units import format_number, parse_quantity

# parameter -> (column name, display unit factor, dimension for parsing)
PARAMETER_UNITS = {
    "frequency": ("frequency_THz", 1e12, "frequency"),
    "chemical_potential": ("chemical_potential_eV", ELEMENTARY_CHARGE, "energy"),
    "dH": ("dH_um", 1e-6, "length"),
    "dL": ("dL_um", 1e-6, "length"),
}
DEFAULT_UNIT = {"frequency": "THz", "energy": "eV", "length": "um"}


@dataclass(frozen=True)
class SweepConfig:
    template: HybridStackTemplate
    parameter: str
    grid: tuple
    continuation: bool = True

    @classmethod
    def from_mapping(cls, values):
        """Build from raw ``{key: string}`` entries (flags or config file)."""
        values = {k.replace("-", "_").lower(): v for k, v in values.items() if v is not None}
        known = {
            "param", "start", "stop", "points", "values", "f", "layers", "mu", "tau", "t",
            "dh", "dl", "eps_l", "eps_h", "substrate", "cover", "d_under", "continuation",
        }
        unknown = set(values) - known
        if unknown:
            raise ConfigError(f"unknown sweep keys: {', '.join(sorted(unknown))}")
        parameter = values.get("param")
        if parameter not in PARAMETER_UNITS:
            raise ConfigError(f"param must be one of {sorted(PARAMETER_UNITS)}, got {parameter!r}")
        dimension = PARAMETER_UNITS[parameter][2]
        unit = DEFAULT_UNIT[dimension]
        if "values" in values:
            grid = [parse_quantity(v, dimension, unit) for v in str(values["values"]).split(",")]
        else:
            try:
                start = parse_quantity(values["start"], dimension, unit)
                stop = parse_quantity(values["stop"], dimension, unit)
                points = int(values.get("points", 2))
            except KeyError as exc:
                raise ConfigError(f"sweep needs 'values' or 'start'/'stop'; missing {exc.args[0]!r}") from None
            except ValueError as exc:
                raise ConfigError(f"bad sweep grid: {exc}") from None
            if points < 1:
                raise ConfigError("points must be >= 1")
            grid = [start] if points == 1 else list(np.linspace(start, stop, points))

        def get(key, default, dim=None, default_unit=None):
            return parse_quantity(values.get(key, default), dim, default_unit)

        try:
            sheet = GrapheneSheet(
                int(values.get("layers", 5)),
                get("mu", "0.9eV", "energy", "eV"),
                get("tau", "0.6ps", "time", "ps"),
                get("t", "300K", "temperature", "K"),
            )
            template = HybridStackTemplate(
                sheet,
                frequency=get("f", "3THz", "frequency", "THz"),
                d_H=get("dh", "30um", "length", "um"),
                d_L=get("dl", "3um", "length", "um"),
                eps_L=get("eps_l", "2.4"),
                eps_H=get("eps_h", "12.9"),
                eps_substrate=get("substrate", "2.4"),
                eps_cover=get("cover", "1.0"),
                d_under=get("d_under", "0um", "length", "um"),
            )
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        continuation = str(values.get("continuation", "on")).lower() not in ("off", "false", "no", "0")
        return cls(template, parameter, tuple(float(x) for x in grid), continuation)


def compute_sweep(config):
    """Solve every grid point; a one-point grid is a plain hybrid-mode solve."""
    if len(config.grid) == 1:
        value = config.grid[0]
        try:
            stack, omega = config.template.with_parameter(config.parameter, value).build()
            return [SweepPoint(value, hybrid_mode(stack, omega))]
        except ThzDraError as exc:
            return [SweepPoint(value, None, f"{exc.category}: {exc}")]
    return sweep(config.template, config.parameter, config.grid, continuation=config.continuation)


def write_table(config, points, stream):
    column, factor, _ = PARAMETER_UNITS[config.parameter]
    stack, _ = config.template.build()
    stream.write(f"# stack: {stack.describe()}\n")
    stream.write(f"# frequency_Hz: {format_number(config.template.frequency)}\n")
    stream.write(f"# sweep: {config.parameter} ({len(points)} points, "
                 f"continuation {'on' if config.continuation else 'off'})\n")
    stream.write(f"# solver: newton+muller step_tol={STEP_TOL:g} residual_tol={RESIDUAL_TOL:g} "
                 f"max_iter={MAX_ITER} fd_step={FD_STEP:g}\n")
    stream.write(f"# time convention: {TIME_CONVENTION}; n_eff = beta/k0 - j*alpha/k0\n")
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow([column, "beta_over_k0", "alpha_over_k0", "classification", "residual", "status"])
    for point in points:
        value = format_number(point.value / factor)
        if point.is_gap:
            writer.writerow([value, "", "", "", "", f"gap: {point.error}"])
        else:
            mode = point.mode
            writer.writerow([
                value,
                format_number(mode.beta_norm),
                format_number(mode.alpha_norm),
                mode.classification.value if mode.classification else "",
                format_number(mode.residual, 3),
                "ok",
            ])


def run_sweep(config, stream=None):
    """Compute and emit the sweep table; returns the CSV text."""
    if not isinstance(config, SweepConfig):
        config = SweepConfig.from_mapping(config)
    points = compute_sweep(config)
    buffer = io.StringIO()
    write_table(config, points, buffer)
    text = buffer.getvalue()
    if stream is not None:
        stream.write(text)
    return text
