"""Scenario configs: schema validation and builders.

A scenario is a JSON object with a ``kind`` discriminator selecting one of
the runnable problem families (riemann1d, spherical, planar, oracle,
weakcheck, geom-suite). Validation happens before any computation; in
strict mode unknown keys are rejected outright, otherwise they are
reported as warnings and ignored. Builders translate validated configs
into the solver-layer objects; semantic errors that the schema cannot
express (for example a tabulated flux with unordered nodes) surface as
ScenarioError with a pointer to the offending key.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np
from jsonschema import Draft202012Validator

from .errors import DShockError, ScenarioError
from .expressions import parse_expression
from .fluxes import FluxModel, relativistic_flux, standard_flux, tabulated_flux
from .riemann1d import RiemannData1D, solve_constant_states
from .solutions import PlanarSolution, from_riemann, time_reversed
from .spherical import (
    RadialField,
    SphericalFrontState,
    constant_field,
    expression_field,
    free_flow_field,
    steady_converging_field,
)

__all__ = [
    "SCENARIO_KINDS",
    "load_scenario",
    "validate_scenario",
    "flux_from_spec",
    "field_from_spec",
    "riemann_data_from_spec",
    "solution_from_spec",
    "orthonormal_frame",
    "planar_from_spec",
    "spherical_setup_from_spec",
]

SCENARIO_KINDS = ("riemann1d", "spherical", "planar", "oracle", "weakcheck", "geom-suite")

_NUM = {"type": "number"}
_POS = {"type": "number", "exclusiveMinimum": 0}
_NONNEG = {"type": "number", "minimum": 0}
_SEED = {"type": "integer", "minimum": 0}
_TOL_MAP = {"type": "object", "additionalProperties": {"type": "number"}}

_FLUX_SCHEMA = {
    "type": "object",
    "properties": {
        "kind": {"enum": ["standard", "relativistic", "tabulated"]},
        "c0": _POS,
        "u_nodes": {"type": "array", "items": _NUM, "minItems": 4},
        "f_values": {"type": "array", "items": _NUM, "minItems": 4},
        "n_values": {"type": "array", "items": _NUM, "minItems": 4},
    },
    "required": ["kind"],
    "additionalProperties": False,
    "allOf": [
        {
            "if": {"properties": {"kind": {"const": "relativistic"}}},
            "then": {"required": ["c0"]},
        },
        {
            "if": {"properties": {"kind": {"const": "tabulated"}}},
            "then": {"required": ["u_nodes", "f_values", "n_values"]},
        },
    ],
}

_FIELD_SCHEMA = {
    "type": "object",
    "properties": {
        "kind": {
            "enum": ["vacuum", "constant", "free_flow", "expression", "steady_converging"]
        },
        "rho": {"type": ["number", "string"]},
        "u": {"type": ["number", "string"]},
        "support": {
            "type": "array",
            "minItems": 2,
            "maxItems": 2,
            "items": {"type": ["number", "string", "null"]},
        },
    },
    "required": ["kind"],
    "additionalProperties": False,
}

_PAIR = {"type": "array", "items": _NUM, "minItems": 2, "maxItems": 2}

_COMMON = {
    "name": {"type": "string"},
    "seed": _SEED,
    "tolerances": _TOL_MAP,
    "out": {"type": "string"},
}

_RIEMANN_PROPS = {
    "kind": {"const": "riemann1d"},
    "flux": _FLUX_SCHEMA,
    "rho_l": _NONNEG,
    "rho_r": _NONNEG,
    "u_l": _NUM,
    "u_r": _NUM,
    "e0": _NONNEG,
    "u_delta0": {"type": ["number", "null"]},
    "x0": _NUM,
    "t_end": _POS,
    "support": _PAIR,
    "samples": {"type": "integer", "minimum": 2},
    "time_reverse": {"type": "boolean"},
    **_COMMON,
}

_KIND_SCHEMAS = {
    "riemann1d": {
        "type": "object",
        "properties": _RIEMANN_PROPS,
        "required": ["kind", "rho_l", "rho_r", "u_l", "u_r", "t_end"],
        "additionalProperties": False,
    },
    "spherical": {
        "type": "object",
        "properties": {
            "kind": {"const": "spherical"},
            "n": {"type": "integer", "minimum": 1},
            "inner": _FIELD_SCHEMA,
            "outer": _FIELD_SCHEMA,
            "phi0": _POS,
            "e0": _NONNEG,
            "u_delta0": _NUM,
            "t_end": _POS,
            "r_min": _POS,
            "annulus": _PAIR,
            "samples": {"type": "integer", "minimum": 2},
            "rtol": _POS,
            "atol": _POS,
            **_COMMON,
        },
        "required": ["kind", "n", "phi0", "t_end", "annulus"],
        "additionalProperties": False,
    },
    "planar": {
        "type": "object",
        "properties": {
            "kind": {"const": "planar"},
            "dim": {"type": "integer", "minimum": 2},
            "rho_minus": _NONNEG,
            "rho_plus": _NONNEG,
            "U_minus": {"type": "array", "items": _NUM, "minItems": 2},
            "U_plus": {"type": "array", "items": _NUM, "minItems": 2},
            "normal": {"type": "array", "items": _NUM, "minItems": 2},
            "x0": _NUM,
            "e0": _NONNEG,
            "u_delta0": {"type": ["number", "null"]},
            "t_end": _POS,
            "support": _PAIR,
            "samples": {"type": "integer", "minimum": 2},
            "check_rotation": {"type": "boolean"},
            **_COMMON,
        },
        "required": ["kind", "dim", "rho_minus", "rho_plus", "U_minus", "U_plus", "normal", "t_end"],
        "additionalProperties": False,
    },
    "oracle": {
        "type": "object",
        "properties": {
            "kind": {"const": "oracle"},
            "preset": {"enum": ["riemann", "spherical"]},
            "N": {"type": "integer", "minimum": 100},
            "T": _POS,
            "mode": {"enum": ["midpoint", "random"]},
            **_COMMON,
        },
        "required": ["kind", "preset"],
        "additionalProperties": False,
    },
    "weakcheck": {
        "type": "object",
        "properties": {
            "kind": {"const": "weakcheck"},
            "solution": {"type": "object"},
            "levels": {"type": "integer", "minimum": 1, "maximum": 6},
            "battery": {
                "type": "object",
                "properties": {
                    "count": {"type": "integer", "minimum": 1},
                    "seed": _SEED,
                    "nonneg": {"type": "integer", "minimum": 0},
                },
                "additionalProperties": False,
            },
            **_COMMON,
        },
        "required": ["kind", "solution"],
        "additionalProperties": False,
    },
    "geom-suite": {
        "type": "object",
        "properties": {
            "kind": {"const": "geom-suite"},
            "radii": {"type": "array", "items": _POS, "minItems": 1},
            "dims": {"type": "array", "items": {"enum": [2, 3]}, "minItems": 1},
            "level": {"type": "integer", "minimum": 0, "maximum": 5},
            **_COMMON,
        },
        "required": ["kind"],
        "additionalProperties": False,
    },
}


def load_scenario(path) -> dict:
    """Read a scenario JSON file; IO and parse problems become ScenarioError."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ScenarioError(f"cannot read scenario file {path}: {exc}") from exc
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"scenario file {path} is not valid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise ScenarioError("scenario must be a JSON object")
    return obj


def validate_scenario(obj: dict, strict: bool = True) -> list[str]:
    """Validate against the kind-specific schema.

    Returns the list of ignored-unknown-key warnings (empty in strict mode,
    where unknown keys raise). Any other violation raises ScenarioError.
    """
    if not isinstance(obj, dict):
        raise ScenarioError("scenario must be a JSON object")
    kind = obj.get("kind")
    if kind not in SCENARIO_KINDS:
        raise ScenarioError(
            f"scenario kind must be one of {list(SCENARIO_KINDS)}, got {kind!r}"
        )
    validator = Draft202012Validator(_KIND_SCHEMAS[kind])
    warnings = []
    for err in sorted(validator.iter_errors(obj), key=lambda e: str(e.absolute_path)):
        where = "/".join(str(p) for p in err.absolute_path) or "<root>"
        if err.validator == "additionalProperties" and not strict:
            warnings.append(f"ignoring unknown keys at {where}: {err.message}")
            continue
        raise ScenarioError(f"scenario schema violation at {where}: {err.message}")
    return warnings


def flux_from_spec(spec: dict | None, dim: int = 1) -> FluxModel:
    if spec is None:
        return standard_flux(dim)
    kind = spec["kind"]
    try:
        if kind == "standard":
            return standard_flux(dim)
        if kind == "relativistic":
            return relativistic_flux(dim, float(spec["c0"]))
        return tabulated_flux(spec["u_nodes"], spec["f_values"], spec["n_values"])
    except DShockError as exc:
        raise ScenarioError(f"bad flux spec: {exc}") from exc


def field_from_spec(spec: dict | None, n: int) -> RadialField | None:
    """Build one side of a spherical problem; vacuum (or None) gives None."""
    if spec is None or spec["kind"] == "vacuum":
        return None
    kind = spec["kind"]
    support = spec.get("support")
    try:
        if kind == "constant":
            return constant_field(float(spec["rho"]), float(spec["u"]), support)
        if kind == "steady_converging":
            return steady_converging_field(n, support)
        if kind == "expression":
            return expression_field(str(spec["rho"]), str(spec["u"]), support)
        # free_flow: rho/u are formulas in the Lagrangian radius r
        rho_e = parse_expression(str(spec["rho"]), allowed={"r"})
        u_e = parse_expression(str(spec["u"]), allowed={"r"})
        sup = None if support is None else (float(support[0]), float(support[1]))
        return free_flow_field(
            lambda r0: float(rho_e(r=r0)), lambda r0: float(u_e(r=r0)), n, sup
        )
    except DShockError as exc:
        raise ScenarioError(f"bad {kind} field spec: {exc}") from exc


def riemann_data_from_spec(obj: dict) -> RiemannData1D:
    try:
        return RiemannData1D(
            rho_l=float(obj["rho_l"]),
            rho_r=float(obj["rho_r"]),
            u_l=float(obj["u_l"]),
            u_r=float(obj["u_r"]),
            flux=flux_from_spec(obj.get("flux"), 1),
            e0=float(obj.get("e0", 0.0)),
            u_delta0=obj.get("u_delta0"),
            x0=float(obj.get("x0", 0.0)),
        )
    except DShockError as exc:
        if isinstance(exc, ScenarioError):
            raise
        raise ScenarioError(f"bad Riemann data: {exc}") from exc


def solution_from_spec(obj: dict, strict: bool = True):
    """Build the solution object an embedded scenario describes.

    Accepts riemann1d and planar scenario objects (the two kinds whose
    solutions the weak-identity checker understands).
    """
    validate_scenario(obj, strict)
    if obj["kind"] == "riemann1d":
        data = riemann_data_from_spec(obj)
        t_end = float(obj["t_end"])
        path = solve_constant_states(data, t_end=t_end)
        support = obj.get("support")
        sol = from_riemann(path, t_end, None if support is None else tuple(support))
        if obj.get("time_reverse", False):
            sol = time_reversed(sol)
        return sol
    if obj["kind"] == "planar":
        return planar_from_spec(obj)
    raise ScenarioError(f"cannot build a solution from kind {obj['kind']!r}")


def orthonormal_frame(normal) -> np.ndarray:
    """Rows: the unit normal, then a deterministic tangential completion."""
    nu = np.asarray(normal, dtype=float)
    norm = float(np.linalg.norm(nu))
    if norm < 1e-13:
        raise ScenarioError("normal vector must be nonzero")
    nu = nu / norm
    dim = nu.size
    rows = [nu]
    # Gram-Schmidt over coordinate axes, least-aligned axis first.
    for k in np.argsort(np.abs(nu), kind="stable"):
        cand = np.zeros(dim)
        cand[k] = 1.0
        for r in rows:
            cand -= (cand @ r) * r
        norm = float(np.linalg.norm(cand))
        if norm > 1e-10:
            rows.append(cand / norm)
        if len(rows) == dim:
            break
    return np.vstack(rows)


def planar_from_spec(obj: dict) -> PlanarSolution:
    dim = int(obj["dim"])
    U_minus = np.asarray(obj["U_minus"], dtype=float)
    U_plus = np.asarray(obj["U_plus"], dtype=float)
    if U_minus.size != dim or U_plus.size != dim or len(obj["normal"]) != dim:
        raise ScenarioError("U_minus, U_plus and normal must all have length dim")
    frame = orthonormal_frame(obj["normal"])
    nu = frame[0]
    data = RiemannData1D(
        rho_l=float(obj["rho_minus"]),
        rho_r=float(obj["rho_plus"]),
        u_l=float(U_minus @ nu),
        u_r=float(U_plus @ nu),
        flux=standard_flux(1),
        e0=float(obj.get("e0", 0.0)),
        u_delta0=obj.get("u_delta0"),
        x0=float(obj.get("x0", 0.0)),
    )
    t_end = float(obj["t_end"])
    path = solve_constant_states(data, t_end=t_end)
    support = obj.get("support")
    base = from_riemann(path, t_end, None if support is None else tuple(support))
    return PlanarSolution(
        base=base,
        frame=frame,
        u_tan_l=frame[1:] @ U_minus,
        u_tan_r=frame[1:] @ U_plus,
    )


def spherical_setup_from_spec(obj: dict):
    """Return (inner, outer, init, kwargs) ready for integrate_front."""
    n = int(obj["n"])
    inner = field_from_spec(obj.get("inner"), n)
    outer = field_from_spec(obj.get("outer"), n)
    init = SphericalFrontState(
        t=0.0,
        phi=float(obj["phi0"]),
        e=float(obj.get("e0", 0.0)),
        u_delta=float(obj.get("u_delta0", 0.0)),
    )
    kwargs = {"n": n, "t_end": float(obj["t_end"])}
    if "r_min" in obj:
        kwargs["r_min"] = float(obj["r_min"])
    if "rtol" in obj:
        kwargs["rtol"] = float(obj["rtol"])
    if "atol" in obj:
        kwargs["atol"] = float(obj["atol"])
    return inner, outer, init, kwargs
