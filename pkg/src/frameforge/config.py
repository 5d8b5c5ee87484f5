"""Experiment configuration: JSON schema, defaults and per-stage random streams."""
from __future__ import annotations

import copy
import json
import zlib

import numpy as np
from jsonschema import Draft7Validator

from .errors import ConfigError

_number = {"type": "number"}
_int = {"type": "integer"}
_activation = {
    "type": "object",
    "required": ["family"],
    "properties": {
        "family": {"type": "string"},
        "dim": {"type": "integer", "minimum": 1, "maximum": 3},
        "params": {"type": "object"},
        "scale": _number,
        "normalize": {"type": "boolean"},
    },
    "additionalProperties": False,
}

SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "title": "frameforge experiment",
    "type": "object",
    "properties": {
        "seed": {"type": "integer", "minimum": 0, "maximum": 2**64 - 1},
        "activation": _activation,
        "kernel": {
            "type": "object",
            "properties": {
                "enabled": {"type": "boolean"},
                "c": {"type": "number", "exclusiveMinimum": 0},
                "epsilon": {"type": ["number", "null"], "exclusiveMinimum": 0},
                "sample_radius": {"type": "number", "exclusiveMinimum": 0},
                "n_samples": {"type": "integer", "minimum": 1000},
                "n_decay": {"type": "integer", "minimum": 16},
            },
            "additionalProperties": False,
        },
        "grid": {
            "type": "object",
            "properties": {
                "d": {"type": ["integer", "null"], "minimum": 1, "maximum": 3},
                "R": {"type": "number", "exclusiveMinimum": 0},
                "n": {"type": "integer", "minimum": 2},
                "rule": {"enum": ["gauss_legendre", "midpoint"]},
            },
            "additionalProperties": False,
        },
        "dictionary": {
            "type": "object",
            "properties": {
                "k_min": _int,
                "k_max": _int,
                "domain": {"type": "array"},
                "cap": {"type": "integer", "minimum": 1},
            },
            "additionalProperties": False,
        },
        "greedy": {
            "type": "object",
            "properties": {
                "N": {"type": "integer", "minimum": 1},
                "tie_break": {"enum": ["smallest_k_then_m", "lowest_index"]},
                "threshold": {"type": ["number", "null"], "minimum": 0},
                "slack": {"type": "number", "minimum": 0},
                "l1_bound": {"type": ["number", "null"], "minimum": 0},
            },
            "additionalProperties": False,
        },
        "target": {
            "type": "object",
            "required": ["kind"],
            "properties": {
                "kind": {"enum": ["builtin", "synthetic", "csv"]},
                "name": {"enum": ["atom"]},
                "n_atoms": {"type": "integer", "minimum": 1},
                "coeff_law": {"enum": ["gaussian", "uniform", "dyadic", "unit"]},
                "path": {"type": "string"},
            },
            "additionalProperties": False,
        },
        "dagger": {
            "type": "object",
            "properties": {
                "enabled": {"type": "boolean"},
                "sigma0": _activation,
                "M": {"type": "array", "items": {"type": "integer", "minimum": 1}, "minItems": 1},
                "shift_box": {"type": ["array", "null"]},
            },
            "additionalProperties": False,
        },
        "network": {
            "type": "object",
            "properties": {
                "enabled": {"type": "boolean"},
                "check_points": {"type": "integer", "minimum": 1},
            },
            "additionalProperties": False,
        },
        "outputs": {
            "type": "object",
            "properties": {
                "run": {"type": "string"},
                "curve": {"type": "string"},
                "net": {"type": "string"},
            },
            "additionalProperties": False,
        },
    },
    "required": ["activation"],
    "additionalProperties": False,
}

DEFAULTS = {
    "seed": 0,
    "activation": {"dim": 1, "params": {}, "scale": 1.0, "normalize": True},
    "kernel": {"enabled": True, "c": 1.0, "epsilon": None, "sample_radius": 16.0,
               "n_samples": 10000, "n_decay": 4096},
    "grid": {"d": None, "R": None, "n": None, "rule": None},
    "dictionary": {"k_min": -2, "k_max": 4, "domain": [-4.0, 4.0], "cap": 1000000},
    "greedy": {"N": 25, "tie_break": "smallest_k_then_m", "threshold": None,
               "slack": 1e-3, "l1_bound": None},
    "target": {"kind": "synthetic", "n_atoms": 10, "coeff_law": "gaussian"},
    "dagger": {"enabled": False, "sigma0": {"family": "Hat", "dim": 1, "params": {},
                                            "scale": 1.0, "normalize": False},
               "M": [9, 17, 33], "shift_box": None},
    "network": {"enabled": True, "check_points": 1000},
    "outputs": {"run": "run.json", "curve": "curve.csv", "net": "net.json"},
}


def _merge(base: dict, over: dict) -> dict:
    out = copy.deepcopy(base)
    for key, val in over.items():
        if isinstance(val, dict) and isinstance(out.get(key), dict) and key != "params":
            out[key] = _merge(out[key], val)
        else:
            out[key] = copy.deepcopy(val)
    return out


def _field(error) -> str:
    path = ".".join(str(p) for p in error.absolute_path)
    return path or "<root>"


def validate(raw: dict) -> None:
    errors = sorted(Draft7Validator(SCHEMA).iter_errors(raw), key=lambda e: list(e.absolute_path))
    if errors:
        first = errors[0]
        raise ConfigError(f"config field '{_field(first)}': {first.message}")


def resolve(raw: dict, seed: int | None = None) -> dict:
    """Validate ``raw`` and return it with every default filled in."""
    if not isinstance(raw, dict):
        raise ConfigError("config must be a JSON object")
    validate(raw)
    cfg = _merge(DEFAULTS, raw)
    if seed is not None:
        cfg["seed"] = int(seed)
    act = cfg["activation"]
    d = act["dim"]
    grid = cfg["grid"]
    if grid["d"] is None:
        grid["d"] = d
    elif grid["d"] != d:
        raise ConfigError(f"config field 'grid.d': {grid['d']} differs from activation.dim {d}")
    if grid["R"] is None:
        grid["R"] = 8.0 if d == 1 else 5.0
    if grid["n"] is None:
        grid["n"] = {1: 2048, 2: 256, 3: 64}[d]
    dic = cfg["dictionary"]
    if dic["k_min"] > dic["k_max"]:
        raise ConfigError("config field 'dictionary.k_min': exceeds k_max")
    tgt = cfg["target"]
    if tgt["kind"] == "builtin":
        tgt.setdefault("name", "atom")
        tgt.pop("n_atoms", None)
        tgt.pop("coeff_law", None)
    elif tgt["kind"] == "csv":
        if "path" not in tgt:
            raise ConfigError("config field 'target.path': required for csv targets")
        tgt.pop("n_atoms", None)
        tgt.pop("coeff_law", None)
    if cfg["dagger"]["sigma0"].get("dim", 1) != d:
        raise ConfigError("config field 'dagger.sigma0.dim': differs from activation.dim")
    cfg["dagger"]["sigma0"] = _merge(DEFAULTS["dagger"]["sigma0"], cfg["dagger"]["sigma0"])
    return cfg


def load(path, seed: int | None = None) -> dict:
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except json.JSONDecodeError as err:
        raise ConfigError(f"config is not valid JSON: {err}") from err
    return resolve(raw, seed)


def stage_seed_sequence(seed: int, stage: str) -> np.random.SeedSequence:
    """Independent stream per named stage, derived from the one run seed."""
    return np.random.SeedSequence(entropy=int(seed), spawn_key=(zlib.crc32(stage.encode()),))


def stage_rng(seed: int, stage: str) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(stage_seed_sequence(seed, stage)))


def stage_int(seed: int, stage: str) -> int:
    """A 32-bit integer seed for APIs that take one (e.g. scrambled Sobol)."""
    return int(stage_seed_sequence(seed, stage).generate_state(1)[0])
