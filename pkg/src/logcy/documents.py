"""JSON documents for every domain value.

A document is ``{"schema_version": "1", "kind": ..., "payload": {...}}``.
Rationals are strings ``"p/q"`` or ``"p"`` (plain JSON integers are also
read); floats are rejected everywhere and unknown keys are errors.
"""

import json
import re
from fractions import Fraction

from .arrangement import PlanePair
from .bott import BottTowerSpec, Stage
from .errors import LogCYError, SchemaError, ValidationError
from .fan import Fan, validate_fan
from .fibration import FanMorphism
from .pairs import Component, NumericalPair, ToricPair

__all__ = ["SCHEMA_VERSION", "KINDS", "to_document", "from_document", "dumps", "parse"]

SCHEMA_VERSION = "1"
KINDS = ("fan", "pair", "numerical_pair", "arrangement", "morphism", "tower_spec")

_RATIONAL = re.compile(r"-?\d+(/\d+)?")


def rational_str(q):
    return str(Fraction(q))


# --------------------------------------------------------------------------
# writing


def _fan_payload(fan):
    return {
        "rank": fan.rank,
        "rays": [list(u) for u in fan.rays],
        "max_cones": [list(c) for c in fan.max_cones],
    }


def _payload(value):
    if isinstance(value, Fan):
        return "fan", _fan_payload(value)
    if isinstance(value, ToricPair):
        return "pair", {
            **_fan_payload(value.fan),
            "coeffs": [rational_str(c) for c in value.coeffs],
        }
    if isinstance(value, NumericalPair):
        comps = [
            {"class": list(c.cls), "coeff": rational_str(c.coeff), "count": c.count}
            for c in value.components
        ]
        return "numerical_pair", {**_fan_payload(value.fan), "components": comps}
    if isinstance(value, PlanePair):
        return "arrangement", {
            "lines": [[rational_str(x) for x in l] for l in value.lines],
            "coeffs": [rational_str(c) for c in value.coeffs],
        }
    if isinstance(value, FanMorphism):
        return "morphism", {
            "source": _fan_payload(value.source),
            "target": _fan_payload(value.target),
            "matrix": [list(r) for r in value.matrix],
        }
    if isinstance(value, BottTowerSpec):
        return "tower_spec", {
            "stages": [
                {"dim": s.dim, "twists": [list(t) for t in s.twists]}
                for s in value.stages
            ]
        }
    raise TypeError(f"cannot serialise {type(value).__name__}")


def to_document(value):
    kind, payload = _payload(value)
    return {"schema_version": SCHEMA_VERSION, "kind": kind, "payload": payload}


def dumps(obj):
    """Canonical JSON text (sorted keys, two-space indent, trailing newline)."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


# --------------------------------------------------------------------------
# reading


def _keys(obj, required, path):
    if not isinstance(obj, dict):
        raise SchemaError(f"{path}: expected an object")
    extra = sorted(set(obj) - set(required))
    if extra:
        raise SchemaError(f"{path}: unknown field(s) {extra}")
    missing = [k for k in required if k not in obj]
    if missing:
        raise SchemaError(f"{path}: missing field(s) {missing}")


def _list(obj, path):
    if not isinstance(obj, list):
        raise SchemaError(f"{path}: expected a list")
    return obj


def _int(x, path):
    if isinstance(x, bool) or not isinstance(x, int):
        raise SchemaError(f"{path}: expected an integer, got {json.dumps(x)}")
    return x


def _rational(x, path):
    if isinstance(x, bool) or isinstance(x, float):
        raise SchemaError(f"{path}: expected a rational string like \"1/2\", got {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if not isinstance(x, str) or not _RATIONAL.fullmatch(x.strip()):
        raise SchemaError(f"{path}: expected a rational string like \"1/2\", got {x!r}")
    try:
        return Fraction(x.strip())
    except ZeroDivisionError:
        raise SchemaError(f"{path}: zero denominator") from None


def _ints(obj, path):
    return [_int(x, f"{path}[{i}]") for i, x in enumerate(_list(obj, path))]


def _int_rows(obj, path):
    return [_ints(r, f"{path}[{i}]") for i, r in enumerate(_list(obj, path))]


def _build(path, fn, *args):
    try:
        return fn(*args)
    except LogCYError as e:
        if isinstance(e, (SchemaError, ValidationError)):
            raise
        raise ValidationError(path, f"{e.code}: {e.detail}") from e


def _fan_fields(p, path):
    rank = _int(p["rank"], f"{path}.rank")
    rays = _int_rows(p["rays"], f"{path}.rays")
    cones = _int_rows(p["max_cones"], f"{path}.max_cones")
    return _build(path, validate_fan, rank, rays, cones)


_FAN_KEYS = ("rank", "rays", "max_cones")


def _read(kind, p, path):
    if kind == "fan":
        _keys(p, _FAN_KEYS, path)
        return _fan_fields(p, path)
    if kind == "pair":
        _keys(p, _FAN_KEYS + ("coeffs",), path)
        fan = _fan_fields(p, path)
        coeffs = [
            _rational(c, f"{path}.coeffs[{i}]")
            for i, c in enumerate(_list(p["coeffs"], f"{path}.coeffs"))
        ]
        return _build(f"{path}.coeffs", ToricPair, fan, tuple(coeffs))
    if kind == "numerical_pair":
        _keys(p, _FAN_KEYS + ("components",), path)
        fan = _fan_fields(p, path)
        comps = []
        for i, c in enumerate(_list(p["components"], f"{path}.components")):
            cp = f"{path}.components[{i}]"
            _keys(c, ("class", "coeff", "count"), cp)
            comps.append(
                Component(
                    tuple(_ints(c["class"], f"{cp}.class")),
                    _rational(c["coeff"], f"{cp}.coeff"),
                    _int(c["count"], f"{cp}.count"),
                )
            )
        return _build(f"{path}.components", NumericalPair, fan, tuple(comps))
    if kind == "arrangement":
        _keys(p, ("lines", "coeffs"), path)
        lines = []
        for i, l in enumerate(_list(p["lines"], f"{path}.lines")):
            lp = f"{path}.lines[{i}]"
            lines.append(tuple(_rational(x, f"{lp}[{j}]") for j, x in enumerate(_list(l, lp))))
        coeffs = [
            _rational(c, f"{path}.coeffs[{i}]")
            for i, c in enumerate(_list(p["coeffs"], f"{path}.coeffs"))
        ]
        return _build(path, PlanePair, tuple(lines), tuple(coeffs))
    if kind == "morphism":
        _keys(p, ("source", "target", "matrix"), path)
        src = _read("fan", p["source"], f"{path}.source")
        tgt = _read("fan", p["target"], f"{path}.target")
        M = _int_rows(p["matrix"], f"{path}.matrix")
        return _build(path, FanMorphism, src, tgt, tuple(map(tuple, M)))
    if kind == "tower_spec":
        _keys(p, ("stages",), path)
        stages = []
        for i, s in enumerate(_list(p["stages"], f"{path}.stages")):
            sp = f"{path}.stages[{i}]"
            _keys(s, ("dim", "twists"), sp)
            stages.append(
                Stage(_int(s["dim"], f"{sp}.dim"), tuple(map(tuple, _int_rows(s["twists"], f"{sp}.twists"))))
            )
        return _build(f"{path}.stages", BottTowerSpec, tuple(stages))
    raise SchemaError(f"{path}: unknown kind {kind!r}")


def from_document(obj, expected=None):
    """Validate a parsed JSON object and build the domain value.

    ``expected`` is a kind or a tuple of acceptable kinds.
    """
    _keys(obj, ("schema_version", "kind", "payload"), "$")
    if obj["schema_version"] != SCHEMA_VERSION:
        raise SchemaError(f"$.schema_version: unsupported version {obj['schema_version']!r}")
    kind = obj["kind"]
    if kind not in KINDS:
        raise SchemaError(f"$.kind: unknown kind {kind!r}")
    if expected is not None:
        allowed = (expected,) if isinstance(expected, str) else tuple(expected)
        if kind not in allowed:
            raise SchemaError(f"$.kind: expected one of {list(allowed)}, got {kind!r}")
    return _read(kind, obj["payload"], "$.payload")


def _reject_float(text):
    raise SchemaError(f"floating point literal {text} is not allowed; use a rational string")


def parse(text, expected=None):
    """Parse document text into a domain value."""
    try:
        obj = json.loads(text, parse_float=_reject_float)
    except json.JSONDecodeError as e:
        raise SchemaError(f"line {e.lineno} column {e.colno}: {e.msg}") from None
    return from_document(obj, expected)
