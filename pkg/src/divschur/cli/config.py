"""Experiment configuration: JSON documents with a schema version."""
from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field

from ..errors import ConfigInvalid
from ..schatten import ExponentTuple

SCHEMA_VERSION = 1
OUTPUT_DIR_ENV = "DIVSCHUR_OUTPUT_DIR"

REQUIRED = object()


def _p(kind, default, doc):
    return {"type": kind, "default": default, "doc": doc}


# kind -> parameter -> spec. REQUIRED marks parameters without a default.
SCHEMAS: dict = {
    "divdiff-oracle": {
        "seed": _p("int", REQUIRED, "RNG seed"),
        "cases": _p("int", 200, "number of random (f, nodes) cases"),
        "max_n": _p("int", 4, "largest divided-difference order"),
        "tol": _p("float", 1e-9, "relative tolerance"),
    },
    "torus-expansion": {
        "seed": _p("int", REQUIRED, "RNG seed"),
        "max_n": _p("int", 3, "orders 1..max_n"),
        "max_k": _p("int", 12, "monomial degrees -max_k..max_k"),
        "trials": _p("int", 50, "random node tuples per (n, k)"),
        "min_gap": _p("float", 0.1, "minimal angular separation of nodes"),
        "tol": _p("float", 1e-8, "tolerance relative to max(1, |value|)"),
    },
    "moi-bound": {
        "seed": _p("int", REQUIRED, "RNG seed"),
        "N": _p("int", 16, "matrix size"),
        "trials": _p("int", 100, "random trials"),
        "exponents": _p("list[float]", [2.0, 2.0], "p_1..p_n with combined p <= 1"),
        "K": _p("int", 2, "Fourier support [-K, K]^(n+1)"),
        "tol": _p("float", 1e-8, "additive slack"),
    },
    "cayley-check": {
        "seed": _p("int", REQUIRED, "RNG seed"),
        "orders": _p("list[int]", [1, 2, 3], "values of n"),
        "trials": _p("int", 50, "random node sets per n"),
        "center": _p("float", 0.3, "bump centre"),
        "radius": _p("float", 1.5, "bump radius"),
        "variant": _p("str", "uniform", "coefficient variant: uniform or as_stated"),
        "tol": _p("float", 1e-6, "tolerance relative to 1 + |lhs|"),
    },
    "split-partition": {
        "functions": _p("list[str]", ["sin"], "any of sin, bump, cube"),
        "orders": _p("list[int]", [2], "values of n"),
        "radii": _p("list[float]", [1.0], "cutoff radii R"),
        "N": _p("int", 16, "grid size"),
        "L": _p("float", 4.0, "grid range [0, L)"),
        "tol": _p("float", 1e-9, "max pointwise residual"),
    },
    "scaling-law": {
        "seed": _p("int", REQUIRED, "RNG seed"),
        "n": _p("int", 2, "divided-difference order"),
        "N": _p("int", 24, "grid size"),
        "L": _p("float", 6.0, "grid range [0, L)"),
        "lambdas": _p("list[float]", [0.5, 2.0], "dilation factors"),
        "alpha": _p("list[float]", [0.5, 1.0, -0.75], "coefficients alpha_{-K..K}"),
        "exponents": _p("list[float]", [2.0, 2.0], "p_1..p_n"),
        "restarts": _p("int", 8, "optimizer restarts"),
        "max_iters": _p("int", 100, "optimizer iterations"),
        "pointwise_trials": _p("int", 50, "random node sets for the pointwise identity"),
        "tol": _p("float", 1e-9, "pointwise tolerance"),
        "rel_tol": _p("float", 0.02, "tolerance on estimate ratio / lambda^n"),
    },
    "toeplitz-bound": {
        "seed": _p("int", REQUIRED, "RNG seed"),
        "N": _p("int", 32, "grid size"),
        "L": _p("float", 8.0, "grid range [0, L)"),
        "radii": _p("list[float]", [1.0], "cutoff radii R"),
        "exponents": _p("list[float]", [1.0, 2.0], "Schatten exponents p"),
        "symbols": _p("list[str]", ["rho", "one_minus_rho_over_t"], "profiles"),
        "restarts": _p("int", 16, "optimizer restarts"),
        "max_iters": _p("int", 100, "optimizer iterations"),
        "tol": _p("float", 1e-6, "additive slack"),
    },
    "pinching": {
        "seed": _p("int", REQUIRED, "RNG seed"),
        "trials": _p("int", 100, "random cases per inequality"),
        "N": _p("int", 12, "matrix size"),
        "quasi_exponents": _p("list[float]", [0.25, 0.5, 1.0], "p for the p-triangle inequality"),
        "pinch_exponents": _p("list[float]", [1.0, 2.0, 3.0, "inf"], "p for pinching"),
        "tol": _p("float", 1e-9, "relative slack"),
    },
    "besov-scaling": {
        "n": _p("int", 2, "order n; s = n - 1 + 1/p"),
        "p": _p("float", 1.0, "exponent p; Besov indices (n-1+1/p, p_sharp, p)"),
        "M": _p("int", 6, "Daubechies order"),
        "J": _p("int", 10, "cascade depth"),
        "j_range": _p("list[int]", [-12, 6], "scales [lo, hi]"),
        "m_values": _p("list[int]", [-2, -1, 1, 2], "dyadic dilations f(2^m .)"),
        "center": _p("float", 0.0, "bump centre"),
        "radius": _p("float", 1.0, "bump radius"),
        "tol": _p("float", 1e-8, "relative tolerance"),
    },
    "main-theorem-probe": {
        "seed": _p("int", REQUIRED, "RNG seed"),
        "n": _p("int", 2, "order n"),
        "exponents": _p("list[float]", [2.0, 2.0], "p_1..p_n"),
        "sizes": _p("list[int]", [16, 32, 64], "grid sizes N"),
        "L": _p("float", 8.0, "grid range [0, L)"),
        "center": _p("float", 4.0, "bump centre"),
        "radius": _p("float", 3.0, "bump radius"),
        "M": _p("int", 9, "Daubechies order"),
        "J": _p("int", 10, "cascade depth"),
        "j_range": _p("list[int]", [-16, 6], "Besov scales [lo, hi]"),
        "restarts": _p("int", 8, "optimizer restarts"),
        "max_iters": _p("int", 100, "optimizer iterations"),
        "growth_limit": _p("float", 2.0, "allowed ratio growth from first to last N"),
    },
}

KINDS = tuple(SCHEMAS)


def _coerce(name, spec, value):
    kind = spec["type"]
    try:
        if kind == "int":
            if isinstance(value, bool) or int(value) != value:
                raise ValueError
            return int(value)
        if kind == "float":
            return _float(value)
        if kind == "str":
            if not isinstance(value, str):
                raise ValueError
            return value
        if kind == "list[int]":
            return [_coerce(name, {"type": "int"}, v) for v in value]
        if kind == "list[float]":
            return [_float(v) for v in value]
        if kind == "list[str]":
            return [_coerce(name, {"type": "str"}, v) for v in value]
    except (TypeError, ValueError):
        pass
    raise ConfigInvalid(f"parameter {name!r} must be {kind}, got {value!r}")


def _float(v):
    if isinstance(v, str) and v.lower() in ("inf", "infinity"):
        return math.inf
    if isinstance(v, bool):
        raise ValueError
    return float(v)


@dataclass(frozen=True)
class ExperimentConfig:
    name: str
    kind: str
    parameters: dict = field(default_factory=dict)
    output_path: str | None = None
    schema_version: int = SCHEMA_VERSION

    def __post_init__(self):
        if self.schema_version != SCHEMA_VERSION:
            raise ConfigInvalid(f"unsupported schema_version {self.schema_version!r}")
        if not isinstance(self.name, str) or not self.name:
            raise ConfigInvalid("name must be a non-empty string")
        if self.kind not in SCHEMAS:
            raise ConfigInvalid(f"unknown kind {self.kind!r}; see list-kinds")
        schema = SCHEMAS[self.kind]
        unknown = sorted(set(self.parameters) - set(schema))
        if unknown:
            raise ConfigInvalid(f"unknown parameters for {self.kind}: {unknown}")
        resolved = {}
        for key, spec in schema.items():
            if key in self.parameters:
                resolved[key] = _coerce(key, spec, self.parameters[key])
            elif spec["default"] is REQUIRED:
                raise ConfigInvalid(f"{self.kind} requires parameter {key!r}")
            else:
                resolved[key] = _coerce(key, spec, spec["default"])
        if "exponents" in resolved:
            try:
                ExponentTuple(tuple(resolved["exponents"]))
            except Exception as exc:
                raise ConfigInvalid(f"invalid exponents: {exc}") from exc
        object.__setattr__(self, "parameters", resolved)

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentConfig":
        if not isinstance(d, dict):
            raise ConfigInvalid("config must be a JSON object")
        extra = sorted(set(d) - {"name", "kind", "parameters", "output_path", "schema_version"})
        if extra:
            raise ConfigInvalid(f"unknown top-level fields: {extra}")
        if "schema_version" not in d:
            raise ConfigInvalid("missing schema_version")
        return cls(name=d.get("name", ""), kind=d.get("kind", ""),
                   parameters=dict(d.get("parameters", {})),
                   output_path=d.get("output_path"), schema_version=d["schema_version"])

    @classmethod
    def load(cls, path) -> "ExperimentConfig":
        try:
            with open(path) as fh:
                data = json.load(fh)
        except OSError as exc:
            raise ConfigInvalid(f"cannot read {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigInvalid(f"{path} is not valid JSON: {exc}") from exc
        return cls.from_dict(data)

    def to_dict(self) -> dict:
        return {"schema_version": self.schema_version, "name": self.name, "kind": self.kind,
                "parameters": dict(self.parameters), "output_path": self.output_path}

    def resolved_output(self, suffix=".json") -> str:
        """Output path, honouring the output-directory environment override."""
        base = self.output_path or f"{self.name}.json"
        stem, _ = os.path.splitext(base)
        path = stem + suffix
        override = os.environ.get(OUTPUT_DIR_ENV)
        if override:
            path = os.path.join(override, os.path.basename(path))
        return path


def describe(kind: str) -> dict:
    if kind not in SCHEMAS:
        raise ConfigInvalid(f"unknown kind {kind!r}")
    out = {}
    for key, spec in SCHEMAS[kind].items():
        entry = {"type": spec["type"], "doc": spec["doc"]}
        if spec["default"] is REQUIRED:
            entry["required"] = True
        else:
            entry["default"] = spec["default"]
        out[key] = entry
    return out
