"""Persisted transform chains: the JSON artifact the CLI and service share.

Schema (version 1):

    {
      "version": 1,
      "seed": {"curve": "<slug>"} or {"expr": "<text>", "vars": ["u", "v"]},
      "steps": [
        {"kind": "blow_down" | "blow_up", "pivot": ..., "replaced": ...,
         "new": ..., "center": "p/q", "strict": false,
         "pre_translate": ["p/q", "p/q"]}            # optional
      ]
    }

Schema problems raise ValueError (usage-level); running a pipeline can
raise the transform errors, wrapped in StepFailure with the 1-based step
index.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from . import catalog
from .errors import CurveLabError
from .expr import is_identifier, poly_from_text
from .poly import BivarPoly, as_fraction
from .transforms import (TransformStep, apply_step, step_from_dict,
                         step_to_dict)

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class PipelineStep:
    step: TransformStep
    pre_translate: Optional[Tuple[Fraction, Fraction]] = None


@dataclass(frozen=True)
class Pipeline:
    seed_curve: Optional[str]          # catalog slug, or None
    seed_expr: Optional[str]           # expression text, or None
    vars: Tuple[str, str]
    steps: Tuple[PipelineStep, ...]


class StepFailure(CurveLabError):
    """A transform failed at a specific pipeline step."""

    def __init__(self, index: int, cause: CurveLabError):
        super().__init__(f"step {index}: {cause}")
        self.index = index
        self.cause = cause

    @property
    def code(self) -> str:
        return self.cause.code


def _check_vars(raw, where: str) -> Tuple[str, str]:
    if (not isinstance(raw, (list, tuple)) or len(raw) != 2
            or not all(isinstance(n, str) and is_identifier(n) for n in raw)
            or raw[0] == raw[1]):
        raise ValueError(f"{where} must be two distinct identifiers")
    return raw[0], raw[1]


def pipeline_from_dict(data: dict) -> Pipeline:
    """Validate the JSON form; raises ValueError on any schema problem."""
    if not isinstance(data, dict):
        raise ValueError("pipeline must be an object")
    unknown = set(data) - {"version", "seed", "steps"}
    if unknown:
        raise ValueError(f"unknown field(s): {', '.join(sorted(unknown))}")
    if data.get("version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema version {data.get('version')!r}; "
                         f"expected {SCHEMA_VERSION}")
    seed = data.get("seed")
    if not isinstance(seed, dict):
        raise ValueError("seed must be an object")
    unknown = set(seed) - {"curve", "expr", "vars"}
    if unknown:
        raise ValueError(f"unknown seed field(s): {', '.join(sorted(unknown))}")
    has_curve = "curve" in seed
    has_expr = "expr" in seed
    if has_curve == has_expr:
        raise ValueError("seed needs exactly one of 'curve' or 'expr'")
    if has_curve:
        if not isinstance(seed["curve"], str):
            raise ValueError("seed curve must be a slug string")
        entry = catalog.get_entry(seed["curve"])   # NotFound surfaces as-is
        vars_pair = entry.vars
        if "vars" in seed and tuple(_check_vars(seed["vars"], "seed vars")) \
                != vars_pair:
            raise ValueError(f"seed vars do not match curve variables "
                             f"{list(vars_pair)}")
        seed_curve, seed_expr = seed["curve"], None
    else:
        if not isinstance(seed["expr"], str):
            raise ValueError("seed expr must be a string")
        if "vars" not in seed:
            raise ValueError("an expression seed requires 'vars'")
        vars_pair = _check_vars(seed["vars"], "seed vars")
        seed_curve, seed_expr = None, seed["expr"]
    raw_steps = data.get("steps", [])
    if not isinstance(raw_steps, list):
        raise ValueError("steps must be a list")
    steps: List[PipelineStep] = []
    for position, raw in enumerate(raw_steps, start=1):
        if not isinstance(raw, dict):
            raise ValueError(f"step {position} must be an object")
        raw = dict(raw)
        pre = raw.pop("pre_translate", None)
        if pre is not None:
            if not isinstance(pre, (list, tuple)) or len(pre) != 2:
                raise ValueError(f"step {position}: pre_translate must be a "
                                 "pair of rationals")
            try:
                pre = (as_fraction(pre[0]), as_fraction(pre[1]))
            except ValueError as exc:
                raise ValueError(f"step {position}: {exc}") from None
        try:
            step = step_from_dict(raw)
        except ValueError as exc:
            raise ValueError(f"step {position}: {exc}") from None
        steps.append(PipelineStep(step=step, pre_translate=pre))
    return Pipeline(seed_curve=seed_curve, seed_expr=seed_expr,
                    vars=vars_pair, steps=tuple(steps))


def pipeline_to_dict(pipeline: Pipeline) -> dict:
    seed: dict = {}
    if pipeline.seed_curve is not None:
        seed["curve"] = pipeline.seed_curve
    else:
        seed["expr"] = pipeline.seed_expr
    seed["vars"] = list(pipeline.vars)
    steps = []
    for item in pipeline.steps:
        raw = step_to_dict(item.step)
        if item.pre_translate is not None:
            raw["pre_translate"] = [str(c) for c in item.pre_translate]
        steps.append(raw)
    return {"version": SCHEMA_VERSION, "seed": seed, "steps": steps}


def load_pipeline(path: str) -> Pipeline:
    with open(path, "r", encoding="utf-8") as handle:
        try:
            data = json.load(handle)
        except json.JSONDecodeError as exc:
            raise ValueError(f"not valid JSON: {exc}") from None
    return pipeline_from_dict(data)


def save_pipeline(pipeline: Pipeline, path: str) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(pipeline_to_dict(pipeline), handle, indent=2)
        handle.write("\n")


def seed_poly(pipeline: Pipeline) -> BivarPoly:
    """The starting polynomial (catalog entries are already canonical)."""
    if pipeline.seed_curve is not None:
        return catalog.get_entry(pipeline.seed_curve).poly
    return poly_from_text(pipeline.seed_expr, *pipeline.vars).normalize()


def run_pipeline(pipeline: Pipeline) -> List[BivarPoly]:
    """Apply every step in order; returns [seed, after step 1, ...].

    Transform failures carry the 1-based index of the offending step.
    """
    current = seed_poly(pipeline)
    trace = [current]
    for index, item in enumerate(pipeline.steps, start=1):
        try:
            current, _ = apply_step(current, item.step, item.pre_translate)
        except CurveLabError as exc:
            raise StepFailure(index, exc) from exc
        trace.append(current)
    return trace
