"""JSON code artifacts.

A code artifact stores the construction inputs together with the generator
matrix; loading rebuilds the code from the inputs and refuses files whose
stored generator disagrees with the rebuilt one.
"""

from __future__ import annotations

import json

import numpy as np

from . import codes
from .curves import LINE, curve_from_json, make_support
from .gf import field_from_json

SCHEMA = "agext.code/1"
DUAL_SCHEMA = "agext.dual/1"


class ArtifactError(ValueError):
    pass


def code_to_json(code: codes.EvaluationCode) -> dict:
    return {
        "schema": SCHEMA,
        "field": code.field.to_json(),
        "curve": code.curve.to_json(),
        "support": code.support.to_json(),
        "m": code.m,
        "variant": code.variant,
        "delta": code.delta,
        "generator": [[int(v) for v in row] for row in code.generator],
    }


def _points(curve, support):
    if curve.family == LINE:
        return [(int(p[0]), None) for p in support]
    return [(int(p[0]), int(p[1])) for p in support]


def code_from_json(obj: dict) -> codes.EvaluationCode:
    try:
        F = field_from_json(obj["field"])
        C = curve_from_json(obj["curve"], F)
        support = obj["support"]
        m = int(obj["m"])
        variant = obj["variant"]
        delta = obj.get("delta")
    except (KeyError, TypeError, ValueError) as exc:
        raise ArtifactError(f"malformed code artifact: {exc}") from exc
    if not support:
        raise ArtifactError("code artifact has an empty support")
    D = make_support(C, _points(C, support))
    code = codes.build(C, D, m, variant, delta)
    stored = obj.get("generator")
    if stored is not None:
        G = np.asarray(stored, dtype=np.int64)
        if G.shape != code.generator.shape or np.any(G != code.generator):
            raise ArtifactError("stored generator does not match the rebuilt code")
    return code


def dual_to_json(code: codes.EvaluationCode, generator, method: str, lambdas=None,
                 orthogonal: bool | None = None) -> dict:
    return {
        "schema": DUAL_SCHEMA,
        "primal": code_to_json(code),
        "method": method,
        "lambda": None if lambdas is None else [int(v) for v in lambdas],
        "orthogonal": orthogonal,
        "generator": [[int(v) for v in row] for row in np.asarray(generator)],
    }


def dual_from_json(obj: dict):
    """(primal code, dual generator, metadata) from a dual artifact."""
    if obj.get("schema") != DUAL_SCHEMA:
        raise ArtifactError("not a dual artifact")
    code = code_from_json(obj["primal"])
    G = np.asarray(obj["generator"], dtype=np.int64).reshape(-1, code.n)
    return code, G, {"method": obj.get("method"), "lambda": obj.get("lambda"),
                     "orthogonal": obj.get("orthogonal")}


def load(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ArtifactError(f"{path}: not valid JSON ({exc})") from exc


def dump(obj: dict, path: str | None) -> str:
    text = json.dumps(obj, indent=1, sort_keys=True)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    return text
