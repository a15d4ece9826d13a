"""JSON serialisation of design reports (9 significant digits, fixed key order)."""

import json

from ..constants import TIME_CONVENTION
from ..units import SIGNIFICANT_DIGITS


def _num(x):
    if x is None:
        return None
    if isinstance(x, complex):
        return {"re": _num(x.real), "im": _num(x.imag)}
    return float(f"{x:.{SIGNIFICANT_DIGITS}g}")


def _resonances(items):
    if items is None:
        return None
    out = []
    for r in items:
        out.append({
            "order": r.order,
            "kind": r.kind.value,
            "frequency_Hz": _num(r.frequency),
            "spp_wavelength_m": _num(r.spp_wavelength),
            "n_eff": _num(r.n_eff),
            "approximate": r.approximate,
            "note": r.note,
        })
    return out


def report_to_dict(report):
    spec = report.spec
    g = spec.graphene
    return {
        "status": "ok",
        "time_convention": TIME_CONVENTION,
        "inputs": {
            "target_frequency_Hz": _num(spec.target_frequency),
            "resonance_order": spec.resonance_order,
            "dra_mode": str(spec.dra_mode),
            "free_variable": spec.free,
            "graphene": {
                "layers": g.layer_count,
                "chemical_potential_eV": _num(g.chemical_potential_ev),
                "relaxation_time_s": _num(g.relaxation_time),
                "temperature_K": _num(g.temperature),
            },
            "eps_low": _num(spec.eps_low),
            "eps_high": _num(spec.eps_high),
            "eps_substrate": _num(spec.eps_substrate),
            "eps_cover": _num(spec.eps_cover),
            "d_L1_m": _num(spec.d_L1),
            "d_L2_m": _num(spec.d_L2),
            "area_budget_m": None if spec.area_budget is None else [_num(x) for x in spec.area_budget],
        },
        "dipole": {
            "length_m": _num(report.dipole.length),
            "width_m": _num(report.dipole.width),
            "gap_m": _num(report.dipole.gap),
            "hybrid_n_eff": _num(report.hybrid_n_eff),
            "resonances": _resonances(report.dipole_resonances),
            "with_h_layer": {
                "hybrid_n_eff": _num(report.loaded_n_eff),
                "resonances": _resonances(report.loaded_dipole_resonances),
            },
        },
        "dra": {
            "a_m": _num(report.dra.a),
            "b_m": _num(report.dra.b),
            "d_H_m": _num(report.dra.d_H),
            "eps_r": _num(report.dra.eps_r),
            "mode": str(spec.dra_mode),
            "frequency_Hz": _num(report.dra_frequency),
            "ladder": [{"mode": str(m), "frequency_Hz": _num(f)} for m, f in report.dra_ladder],
        },
        "caveats": list(report.caveats),
    }


def infeasible_to_dict(spec, error):
    name, value, frequency = error.closest if error.closest else (None, None, None)
    return {
        "status": "infeasible",
        "message": str(error),
        "target_frequency_Hz": _num(spec.target_frequency),
        "dra_mode": str(spec.dra_mode),
        "closest": {"variable": name, "value_m": _num(value), "frequency_Hz": _num(frequency)},
    }


def dumps(data):
    return json.dumps(data, indent=2) + "\n"
