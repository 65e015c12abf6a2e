"""Shared JSON dialect and CSV helpers.

Rationals serialize as canonical "p/q" strings (q > 0, reduced); the
decimal column emitted next to them in CSV is a 20-significant-digit
approximation and is explicitly non-authoritative.
"""

from __future__ import annotations

import json
from decimal import Decimal, localcontext
from fractions import Fraction
from pathlib import Path
from typing import Any

from .constructions import (
    CantorStage,
    CentralSpec,
    CompositeSpec,
    ConstantRatios,
    GapRecord,
    GeometricRatios,
    GreedySpec,
    ListRatios,
    PerturbedSpec,
    RatioRule,
)
from .errors import InvalidSpecError
from .intervals import Interval, IntervalUnion

__all__ = [
    "format_rational",
    "parse_rational",
    "decimal_str",
    "interval_to_obj",
    "interval_from_obj",
    "union_to_obj",
    "union_from_obj",
    "stage_to_obj",
    "gap_table_rows",
    "GAP_TABLE_HEADER",
    "bracket_to_obj",
    "spec_to_obj",
    "spec_from_obj",
    "load_spec_file",
    "FamilySpec",
    "dump_json",
]

FamilySpec = CentralSpec | PerturbedSpec | CompositeSpec | GreedySpec


def format_rational(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidSpecError(f"invalid rational {text!r}: {exc}") from exc


def decimal_str(q: Fraction) -> str:
    with localcontext() as ctx:
        ctx.prec = 20
        return str(Decimal(q.numerator) / Decimal(q.denominator))


def interval_to_obj(interval: Interval) -> dict[str, Any]:
    return {
        "lo": format_rational(interval.lo),
        "hi": format_rational(interval.hi),
        "lo_closed": interval.lo_closed,
        "hi_closed": interval.hi_closed,
    }


def interval_from_obj(obj: dict[str, Any]) -> Interval:
    return Interval(
        parse_rational(obj["lo"]),
        parse_rational(obj["hi"]),
        bool(obj["lo_closed"]),
        bool(obj["hi_closed"]),
    )


def union_to_obj(union: IntervalUnion) -> list[dict[str, Any]]:
    return [interval_to_obj(p) for p in union.parts]


def union_from_obj(obj: list[dict[str, Any]]) -> IntervalUnion:
    return IntervalUnion(tuple(interval_from_obj(item) for item in obj))


def _gap_to_obj(gap: GapRecord) -> dict[str, Any]:
    return {
        "address": gap.address,
        "lo": format_rational(gap.interval.lo),
        "hi": format_rational(gap.interval.hi),
        "stage_created": gap.stage_created,
    }


def stage_to_obj(stage: CantorStage) -> dict[str, Any]:
    return {
        "family": stage.family,
        "n": stage.n,
        "frame": interval_to_obj(stage.frame),
        "components": union_to_obj(stage.components),
        "gaps": [_gap_to_obj(g) for g in stage.gaps],
        "endpoints": [format_rational(e) for e in stage.endpoints],
        "notes": list(stage.notes),
    }


def bracket_to_obj(bracket) -> dict[str, Any]:
    return {
        "n": bracket.n,
        "inner": union_to_obj(bracket.inner),
        "outer": union_to_obj(bracket.outer),
        "missing_outer": union_to_obj(bracket.missing_outer),
        "missing_inner": union_to_obj(bracket.missing_inner),
    }


GAP_TABLE_HEADER = [
    "address",
    "lo",
    "hi",
    "stage_created",
    "lo_decimal",
    "hi_decimal",
]


def gap_table_rows(stage: CantorStage) -> list[list[str]]:
    rows = []
    for g in stage.gaps:
        rows.append(
            [
                g.address if g.address is not None else "-",
                format_rational(g.interval.lo),
                format_rational(g.interval.hi),
                str(g.stage_created),
                decimal_str(g.interval.lo),
                decimal_str(g.interval.hi),
            ]
        )
    return rows


# ---------------------------------------------------------------------
# spec files


def _ratios_to_obj(rule: RatioRule) -> dict[str, Any]:
    if isinstance(rule, ConstantRatios):
        return {"rule": "constant", "value": format_rational(rule.value)}
    if isinstance(rule, ListRatios):
        return {
            "rule": "list",
            "values": [format_rational(v) for v in rule.values],
            "tail": format_rational(rule.tail),
        }
    if isinstance(rule, GeometricRatios):
        return {"rule": "geometric", "base": format_rational(rule.base)}
    raise InvalidSpecError(f"unknown ratio rule {type(rule).__name__}")


def _ratios_from_obj(obj: Any) -> RatioRule:
    if isinstance(obj, str):
        return ConstantRatios(parse_rational(obj))
    if not isinstance(obj, dict) or "rule" not in obj:
        raise InvalidSpecError("ratios must be a 'p/q' string or a rule object")
    kind = obj["rule"]
    if kind == "constant":
        return ConstantRatios(parse_rational(obj["value"]))
    if kind == "list":
        return ListRatios(
            tuple(parse_rational(v) for v in obj["values"]),
            parse_rational(obj["tail"]),
        )
    if kind == "geometric":
        return GeometricRatios(parse_rational(obj["base"]))
    raise InvalidSpecError(f"unknown ratio rule {kind!r}")


def spec_to_obj(spec: FamilySpec) -> dict[str, Any]:
    if isinstance(spec, CentralSpec):
        return {"family": "central", "ratios": _ratios_to_obj(spec.ratios)}
    if isinstance(spec, PerturbedSpec):
        return {
            "family": "perturbed",
            "c1": format_rational(spec.c1),
            "shrink": format_rational(spec.shrink),
            "interior_gap_fraction": format_rational(spec.interior_gap_fraction),
        }
    if isinstance(spec, CompositeSpec):
        return {
            "family": "tab",
            "a": spec_to_obj(spec.a_source),
            "b": spec_to_obj(spec.b_source),
        }
    if isinstance(spec, GreedySpec):
        return {"family": "greedy", "b": spec_to_obj(spec.b_source)}
    raise InvalidSpecError(f"unknown spec type {type(spec).__name__}")


def spec_from_obj(obj: Any, *, path: str = "spec") -> FamilySpec:
    if not isinstance(obj, dict):
        raise InvalidSpecError(f"{path}: expected an object")
    family = obj.get("family")
    if family == "central":
        if "ratios" not in obj:
            raise InvalidSpecError(f"{path}: central spec needs 'ratios'")
        return CentralSpec(_ratios_from_obj(obj["ratios"]))
    if family == "perturbed":
        if "c1" not in obj:
            raise InvalidSpecError(f"{path}: perturbed spec needs 'c1'")
        kwargs: dict[str, Fraction] = {}
        if "shrink" in obj:
            kwargs["shrink"] = parse_rational(obj["shrink"])
        if "interior_gap_fraction" in obj:
            kwargs["interior_gap_fraction"] = parse_rational(
                obj["interior_gap_fraction"]
            )
        return PerturbedSpec(parse_rational(obj["c1"]), **kwargs)
    if family == "tab":
        for key in ("a", "b"):
            if key not in obj:
                raise InvalidSpecError(f"{path}: tab spec needs '{key}'")
        a = spec_from_obj(obj["a"], path=f"{path}.a")
        b = spec_from_obj(obj["b"], path=f"{path}.b")
        if isinstance(a, (CompositeSpec, GreedySpec)) or isinstance(
            b, (CompositeSpec, GreedySpec)
        ):
            raise InvalidSpecError(f"{path}: tab sources must be central or perturbed")
        return CompositeSpec(a, b)
    if family == "greedy":
        if "b" not in obj:
            raise InvalidSpecError(f"{path}: greedy spec needs 'b'")
        b = spec_from_obj(obj["b"], path=f"{path}.b")
        if isinstance(b, (CompositeSpec, GreedySpec)):
            raise InvalidSpecError(
                f"{path}: greedy source must be central or perturbed"
            )
        return GreedySpec(b)
    raise InvalidSpecError(
        f"{path}: family must be one of central|perturbed|tab|greedy, got {family!r}"
    )


def load_spec_file(path: str | Path) -> FamilySpec:
    text = Path(path).read_text()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidSpecError(
            f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    return spec_from_obj(obj)


def dump_json(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
