"""Command-line interface.

Subcommands: conductivity, dispersion, sweep, dra-modes, dipole, design.
Every subcommand accepts ``--config FILE`` (flat ``key = value`` file with
the flag names as keys; flags given on the command line win) and ``--out
PATH``. A relative ``--out`` is resolved against ``$THZDRA_OUTPUT_DIR`` when
that variable is set. Errors go to stderr as ``error[<category>]: message``.
"""

import argparse
import math
import os
import sys

from ..constants import TIME_CONVENTION
from ..dipole import GAP_CAPACITANCE_CAVEAT, DipoleGeometry, StackModes, design_length, resonance_frequencies
from ..dra import ISOLATED_RESONATOR_CAVEAT, DraGeometry, ModeIndex, enumerate_modes, solve_dra_frequency
from ..errors import ConfigError, InfeasibleDesignError, ThzDraError
from ..graphene import (
    EmVariant,
    GrapheneSheet,
    NUMERATORS,
    conductivity,
    default_thickness,
    interband_conductivity,
    intraband_conductivity,
    to_em_model,
)
from ..multilayer import HybridStackTemplate, equivalence_check, find_modes
from ..units import format_number, format_quantity, parse_quantity
from .config import load_config, normalize_key
from .design import DesignSpec, design
from .report import dumps, infeasible_to_dict, report_to_dict
from .sweeps import SweepConfig, run_sweep

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_INFEASIBLE = 3
OUTPUT_DIR_ENV = "THZDRA_OUTPUT_DIR"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(EXIT_USAGE, f"error[usage]: {message}\n")


# (flag, help); defaults live in DEFAULTS so config files can fill gaps
GRAPHENE_FLAGS = [
    ("layers", "graphene layer count N (1-5)"),
    ("mu", "chemical potential, e.g. 0.8eV"),
    ("tau", "relaxation time, e.g. 0.6ps"),
    ("T", "temperature, e.g. 300K"),
]
STACK_FLAGS = [
    ("dh", "H-layer thickness, e.g. 30um (0 drops it)"),
    ("dl", "L-layer spacer thickness above the graphene"),
    ("d-under", "L-layer thickness below the graphene (0 drops it)"),
    ("eps-l", "L-layer relative permittivity"),
    ("eps-h", "H-layer relative permittivity"),
    ("substrate", "substrate (lower half-space) permittivity"),
    ("cover", "cover (upper half-space) permittivity"),
]

DEFAULTS = {
    "conductivity": {"layers": "5", "mu": "0.8eV", "tau": "0.6ps", "t": "300K", "f": "3THz",
                     "numerator": "standard"},
    "dispersion": {"layers": "5", "mu": "0.9eV", "tau": "0.6ps", "t": "300K", "f": "3THz",
                   "dh": "30um", "dl": "3um", "d_under": "0um", "eps_l": "2.4", "eps_h": "12.9",
                   "substrate": "2.4", "cover": "1.0"},
    "dra-modes": {"a": "20um", "b": "20um", "dh": "60um", "epsr": "12.9", "fmax": "3.5THz"},
    "dipole": {"layers": "5", "mu": "0.8eV", "tau": "0.6ps", "t": "300K", "length": "20um",
               "width": "5um", "gap": "2um", "kmax": "3", "fmin": "0.5THz", "fmax": "6THz",
               "dh": "5um", "dl": "100nm", "d_under": "100nm", "eps_l": "2.4", "eps_h": "12.9",
               "substrate": "12.9", "cover": "1.0", "order": "2"},
    "design": {"layers": "5", "mu": "0.8eV", "tau": "0.6ps", "t": "300K", "mode": "1,1,2",
               "order": "2", "a": "20um", "b": "20um", "dh": "60um", "epsr": "12.9",
               "eps_l": "2.4", "substrate": "12.9", "cover": "1.0", "dl1": "100nm", "dl2": "100nm",
               "width": "5um", "gap": "2um", "free": "dH"},
}


def _add_flags(parser, flags):
    for name, help_text in flags:
        parser.add_argument(f"--{name}", dest=normalize_key(name), default=None, help=help_text)


def build_parser():
    parser = _Parser(prog="thzdra", description="Terahertz graphene-dipole / DRA design toolkit.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("--config", default=None, help="flat key = value file with flag names as keys")
        p.add_argument("--out", default=None, help="write output here instead of stdout")

    p = sub.add_parser("conductivity", help="Kubo sheet conductivity and equivalent models")
    common(p)
    _add_flags(p, GRAPHENE_FLAGS + [("f", "frequency, e.g. 3THz"),
                                    ("numerator", f"interband Fermi factor: {' | '.join(NUMERATORS)}"),
                                    ("dg", "thin-bulk thickness (default 0.34nm per layer)")])

    p = sub.add_parser("dispersion", help="guided TM modes of the hybrid 1D stack")
    common(p)
    _add_flags(p, GRAPHENE_FLAGS + STACK_FLAGS + [("f", "frequency"),
                                                  ("dg", "also compare with the thin-bulk model of this thickness")])

    p = sub.add_parser("sweep", help="mode sweep table (CSV)")
    common(p)
    _add_flags(p, GRAPHENE_FLAGS + STACK_FLAGS + [
        ("f", "frequency"),
        ("param", "frequency | chemical_potential | dH | dL"),
        ("start", "first grid value"),
        ("stop", "last grid value"),
        ("points", "number of grid points"),
        ("values", "explicit comma-separated grid"),
    ])
    p.add_argument("--no-continuation", dest="no_continuation", action="store_true", default=None,
                   help="solve each grid point independently")

    p = sub.add_parser("dra-modes", help="TE_y^{mnp} ladder of a rectangular DRA")
    common(p)
    _add_flags(p, [("a", "x size"), ("b", "y size"), ("dh", "height"), ("epsr", "relative permittivity"),
                   ("fmax", "list resonances below this"), ("mode", "solve one mode only, e.g. 1,1,2")])

    p = sub.add_parser("dipole", help="dipole resonances l = k*lambda_spp/2")
    common(p)
    _add_flags(p, GRAPHENE_FLAGS + STACK_FLAGS + [
        ("length", "dipole total length"), ("width", "dipole width"), ("gap", "feed gap"),
        ("kmax", "highest resonance order"), ("fmin", "window start"), ("fmax", "window end"),
        ("target", "design the length for this frequency instead"), ("order", "order k used with --target"),
    ])

    p = sub.add_parser("design", help="dipole length + DRA size for a target frequency (JSON)")
    common(p)
    _add_flags(p, GRAPHENE_FLAGS + [
        ("target", "target frequency"), ("mode", "DRA mode m,n,p"), ("order", "dipole resonance order k"),
        ("a", "DRA x size"), ("b", "DRA y size"), ("dh", "DRA height (used with --free a,b)"),
        ("epsr", "DRA permittivity"), ("eps-l", "spacer permittivity"), ("substrate", "substrate permittivity"),
        ("cover", "cover permittivity"), ("dl1", "spacer under the graphene"), ("dl2", "spacer above the graphene"),
        ("width", "dipole width"), ("gap", "dipole gap"), ("free", "free variable: dH | a,b"),
        ("area", "area budget a_max,b_max"),
    ])
    return parser


def _merged(args, command):
    values = dict(DEFAULTS.get(command, {}))
    if args.config:
        values.update(load_config(args.config))
    for key, value in vars(args).items():
        if key in ("command", "config", "out") or value is None:
            continue
        values[key] = value
    return values


def _sheet(v):
    try:
        layers = int(v["layers"])
    except ValueError:
        raise ConfigError(f"layers must be an integer, got {v['layers']!r}") from None
    return GrapheneSheet(
        layers,
        parse_quantity(v["mu"], "energy", "eV"),
        parse_quantity(v["tau"], "time", "ps"),
        parse_quantity(v["t"], "temperature", "K"),
    )


def _template(v, sheet, frequency):
    return HybridStackTemplate(
        sheet,
        frequency=frequency,
        d_H=parse_quantity(v["dh"], "length", "um"),
        d_L=parse_quantity(v["dl"], "length", "um"),
        eps_L=parse_quantity(v["eps_l"]),
        eps_H=parse_quantity(v["eps_h"]),
        eps_substrate=parse_quantity(v["substrate"]),
        eps_cover=parse_quantity(v["cover"]),
        d_under=parse_quantity(v["d_under"], "length", "um"),
        eps_under=parse_quantity(v["eps_l"]),
    )


def _cmd_conductivity(v):
    sheet = _sheet(v)
    f = parse_quantity(v["f"], "frequency", "THz")
    omega = 2 * math.pi * f
    numerator = v["numerator"]
    if numerator not in NUMERATORS:
        raise ConfigError(f"numerator must be one of {NUMERATORS}, got {numerator!r}")
    sigma = conductivity(sheet, omega, numerator)
    d_g = parse_quantity(v["dg"], "length", "nm") if v.get("dg") else default_thickness(sheet)
    impedance = to_em_model(sigma, EmVariant.SURFACE_IMPEDANCE)
    bulk = to_em_model(sigma, EmVariant.THIN_BULK, d_g)
    lines = [
        f"# time convention: {TIME_CONVENTION}",
        f"frequency {format_quantity(f, 'THz')}",
        f"layers {sheet.layer_count}",
        f"numerator {numerator}",
        f"sigma_intra_S {format_number(sheet.layer_count * intraband_conductivity(sheet, omega))}",
        f"sigma_inter_S {format_number(sheet.layer_count * interband_conductivity(sheet, omega, numerator))}",
        f"sigma_S {format_number(sigma.value)}",
        f"Z_G_ohm {format_number(impedance.surface_impedance)}",
        f"d_G {format_quantity(d_g, 'nm')}",
        f"eps_G {format_number(bulk.relative_permittivity)}",
    ]
    return "\n".join(lines) + "\n"


def _cmd_dispersion(v):
    sheet = _sheet(v)
    f = parse_quantity(v["f"], "frequency", "THz")
    stack, omega = _template(v, sheet, f).build()
    modes = find_modes(stack, omega)
    lines = [
        f"# stack: {stack.describe()}",
        f"# frequency {format_quantity(f, 'THz')}; time convention {TIME_CONVENTION}; n_eff = beta/k0 - j*alpha/k0",
        "mode,beta_over_k0,alpha_over_k0,classification,residual",
    ]
    for i, mode in enumerate(modes):
        lines.append(f"{i},{format_number(mode.beta_norm)},{format_number(mode.alpha_norm)},"
                     f"{mode.classification.value},{format_number(mode.residual, 3)}")
    if v.get("dg"):
        d_g = parse_quantity(v["dg"], "length", "nm")
        deviation = equivalence_check(stack, omega, d_g)
        lines.append(f"# sheet vs thin-bulk (d_G={format_quantity(d_g, 'nm')}) relative deviation "
                     f"{format_number(deviation)}")
    return "\n".join(lines) + "\n"


def _cmd_sweep(v):
    mapping = {k: v[k] for k in v if k in (
        "param", "start", "stop", "points", "values", "f", "layers", "mu", "tau", "t",
        "dh", "dl", "eps_l", "eps_h", "substrate", "cover", "d_under")}
    if v.get("no_continuation") in (True, "true", "on", "yes", "1"):
        mapping["continuation"] = "off"
    elif "continuation" in v:
        mapping["continuation"] = v["continuation"]
    return run_sweep(SweepConfig.from_mapping(mapping))


def _cmd_dra_modes(v):
    geom = DraGeometry(
        parse_quantity(v["a"], "length", "um"),
        parse_quantity(v["b"], "length", "um"),
        parse_quantity(v["dh"], "length", "um"),
        parse_quantity(v["epsr"]),
    )
    if v.get("mode"):
        mode = ModeIndex.parse(v["mode"])
        ladder = [(mode, solve_dra_frequency(geom, mode))]
    else:
        ladder = enumerate_modes(geom, parse_quantity(v["fmax"], "frequency", "THz"))
    return "".join(f"{mode} {format_quantity(f, 'THz')}\n" for mode, f in ladder)


def _cmd_dipole(v):
    sheet = _sheet(v)
    stack, _ = _template(v, sheet, 1e12).build()
    modes = StackModes(stack)
    lines = [f"# stack: {stack.describe()}", f"# caveat: {GAP_CAPACITANCE_CAVEAT}"]
    if v.get("target"):
        target = parse_quantity(v["target"], "frequency", "THz")
        k = int(v["order"])
        length = design_length(modes, target, k)
        lines.append(f"length {format_quantity(length, 'um')} (k={k}, f={format_quantity(target, 'THz')})")
        return "\n".join(lines) + "\n"
    geom = DipoleGeometry(
        parse_quantity(v["length"], "length", "um"),
        parse_quantity(v["width"], "length", "um"),
        parse_quantity(v["gap"], "length", "um"),
    )
    window = (parse_quantity(v["fmin"], "frequency", "THz"), parse_quantity(v["fmax"], "frequency", "THz"))
    lines.append("k,kind,frequency_THz,spp_wavelength_um,beta_over_k0,note")
    for r in resonance_frequencies(geom, modes, int(v["kmax"]), window=window):
        if r.frequency is None:
            lines.append(f"{r.order},{r.kind.value},,,,{r.note}")
        else:
            lines.append(f"{r.order},{r.kind.value},{format_number(r.frequency / 1e12)},"
                         f"{format_number(r.spp_wavelength / 1e-6)},{format_number(r.n_eff.real)},approximate")
    return "\n".join(lines) + "\n"


def _design_spec(v):
    if not v.get("target"):
        raise ConfigError("design needs --target")
    area = None
    if v.get("area"):
        parts = str(v["area"]).split(",")
        if len(parts) != 2:
            raise ConfigError(f"area must be 'a_max,b_max', got {v['area']!r}")
        area = tuple(parse_quantity(p, "length", "um") for p in parts)
    return DesignSpec(
        target_frequency=parse_quantity(v["target"], "frequency", "THz"),
        resonance_order=int(v["order"]),
        graphene=_sheet(v),
        dra_mode=ModeIndex.parse(v["mode"]),
        a=parse_quantity(v["a"], "length", "um"),
        b=parse_quantity(v["b"], "length", "um"),
        d_H=parse_quantity(v["dh"], "length", "um"),
        eps_low=parse_quantity(v["eps_l"]),
        eps_high=parse_quantity(v["epsr"]),
        eps_substrate=parse_quantity(v["substrate"]),
        eps_cover=parse_quantity(v["cover"]),
        d_L1=parse_quantity(v["dl1"], "length", "um"),
        d_L2=parse_quantity(v["dl2"], "length", "um"),
        dipole_width=parse_quantity(v["width"], "length", "um"),
        dipole_gap=parse_quantity(v["gap"], "length", "um"),
        area_budget=area,
        free=v["free"],
    )


COMMANDS = {
    "conductivity": _cmd_conductivity,
    "dispersion": _cmd_dispersion,
    "sweep": _cmd_sweep,
    "dra-modes": _cmd_dra_modes,
    "dipole": _cmd_dipole,
}


def _emit(text, out):
    if out is None:
        sys.stdout.write(text)
        return
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not os.path.isabs(out):
        out = os.path.join(base, out)
    try:
        with open(out, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
    except OSError as exc:
        raise ConfigError(f"cannot write {out}: {exc.strerror}") from exc


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        values = _merged(args, args.command)
        if args.command == "design":
            spec = _design_spec(values)
            try:
                text = dumps(report_to_dict(design(spec)))
            except InfeasibleDesignError as exc:
                _emit(dumps(infeasible_to_dict(spec, exc)), args.out)
                sys.stderr.write(f"error[{exc.category}]: {exc}\n")
                return EXIT_INFEASIBLE
        else:
            text = COMMANDS[args.command](values)
        _emit(text, args.out)
    except ThzDraError as exc:
        sys.stderr.write(f"error[{exc.category}]: {exc}\n")
        return EXIT_USAGE if isinstance(exc, ConfigError) else EXIT_FAILURE
    except (ValueError, ZeroDivisionError) as exc:
        sys.stderr.write(f"error[domain]: {exc}\n")
        return EXIT_FAILURE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
