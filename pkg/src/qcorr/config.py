"""Parse the JSON scenario/config format into states and observables.

State forms::

    {"amplitudes": [[re, im], ...], "dims": [2, 2, 2]}
    {"named": "ghz" | "w" | "bell" | "basis", "index": 1, "labels": [0, 1]}
    {"mixture": [{"weight": "2/3", "named": "bell", "index": 3}, ...]}
    {"reduce": <state>, "traced": [3]}

Observable forms::

    {"builder": "local_joint", "axes": ["z", "z", null]}
    {"builder": "embed", "inner": <observable>, "slots": [1, 2], "dims": [2, 2, 2]}
    {"effects": [{"outcome": ["1/2"], "matrix": [[[re, im], ...], ...]}, ...]}

Numbers may be JSON numbers or exact strings such as ``"5/24"``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Optional

import numpy as np

from .observables import DiscreteObservable, OutcomeGrid, as_label, embed, local_joint
from .states import (
    PureState,
    StateDecomposition,
    basis_state,
    make_bell,
    make_ghz,
    make_w,
    reduce,
)
from .tensor import DimensionProfile


class ConfigError(ValueError):
    pass


UNDEFINED_TOKENS = {"undefined", "undef", "nan", None}


def parse_real(x) -> float:
    if isinstance(x, bool):
        raise ConfigError(f"not a number: {x!r}")
    if isinstance(x, (int, float)):
        return float(x)
    if isinstance(x, str):
        try:
            return float(Fraction(x.strip()))
        except (ValueError, ZeroDivisionError):
            pass
    raise ConfigError(f"not a number: {x!r}")


def parse_cell(x) -> float:
    """Golden-table cell: a number, or an UNDEFINED token parsed as NaN."""
    if isinstance(x, str) and x.strip().lower() in UNDEFINED_TOKENS or x is None:
        return float("nan")
    return parse_real(x)


def parse_complex(x) -> complex:
    if isinstance(x, (list, tuple)):
        if len(x) != 2:
            raise ConfigError(f"complex numbers are [re, im] pairs, got {x!r}")
        return complex(parse_real(x[0]), parse_real(x[1]))
    return complex(parse_real(x))


def _named_state(spec: dict) -> PureState:
    name = str(spec["named"]).lower()
    if name == "ghz":
        return make_ghz()
    if name == "w":
        return make_w()
    if name == "bell":
        return make_bell(int(spec.get("index", 1)))
    if name == "basis":
        labels = [int(b) for b in spec["labels"]]
        dims = spec.get("dims", [2] * len(labels))
        return basis_state(DimensionProfile(tuple(dims)), labels)
    raise ConfigError(f"unknown named state {name!r}")


def parse_pure_state(spec: dict, dims=None) -> PureState:
    if "named" in spec:
        return _named_state(spec)
    if "amplitudes" not in spec:
        raise ConfigError(f"cannot read a pure state from keys {sorted(spec)}")
    amps = np.array([parse_complex(a) for a in spec["amplitudes"]])
    dims = spec.get("dims", dims)
    if dims is None:
        n = int(round(np.log2(amps.size)))
        if 2**n != amps.size:
            raise ConfigError("give 'dims' for non-qubit registers")
        dims = [2] * n
    if spec.get("normalize"):
        return PureState.normalized(amps, DimensionProfile(tuple(dims)))
    return PureState(amps, DimensionProfile(tuple(dims)))


def parse_state(spec: dict):
    """Return a PureState, StateDecomposition or DensityOperator."""
    if not isinstance(spec, dict):
        raise ConfigError("state must be a JSON object")
    if "mixture" in spec:
        dims = spec.get("dims")
        terms = []
        for term in spec["mixture"]:
            inner = term.get("state", term)
            terms.append((parse_real(term["weight"]), parse_pure_state(inner, dims)))
        return StateDecomposition(tuple(terms))
    if "reduce" in spec:
        return reduce(parse_state(spec["reduce"]), spec["traced"])
    return parse_pure_state(spec)


def parse_observable(spec: dict, dims=None) -> DiscreteObservable:
    """``dims`` (the state's factor dimensions) fills in missing profile info."""
    if not isinstance(spec, dict):
        raise ConfigError("observable must be a JSON object")
    builder = spec.get("builder")
    if builder == "local_joint":
        return local_joint([None if a in (None, "1", "I", "identity") else a for a in spec["axes"]])
    if builder == "embed":
        target = spec.get("dims", dims)
        if target is None:
            raise ConfigError("embed needs target 'dims'")
        inner = parse_observable(spec["inner"])
        return embed(inner, DimensionProfile(tuple(target)), spec["slots"])
    if "effects" in spec:
        return _raw_observable(spec, spec.get("dims", dims))
    raise ConfigError(f"unknown observable spec {spec!r}")


def _raw_observable(spec: dict, dims) -> DiscreteObservable:
    entries = spec["effects"]
    if not entries:
        raise ConfigError("no effects given")
    outcomes = [tuple(as_label(Fraction(str(v))) for v in e["outcome"]) for e in entries]
    axes = []
    for k in range(len(outcomes[0])):
        seen = []
        for o in outcomes:
            if o[k] not in seen:
                seen.append(o[k])
        axes.append(tuple(seen))
    grid = OutcomeGrid(tuple(axes))
    mats = {o: np.array([[parse_complex(z) for z in row] for row in e["matrix"]])
            for o, e in zip(outcomes, entries)}
    if dims is None:
        d = next(iter(mats.values())).shape[0]
        dims = [d]
    return DiscreteObservable.from_mapping(grid, mats, DimensionProfile(tuple(dims)))


GOLDEN_KEYS = ("joint", "product", "sum", "phi_t", "phi_c", "phi_q")


def parse_expected(block: Optional[dict]) -> dict[str, Any]:
    """Golden block -> flat float arrays (grid order); NaN marks UNDEFINED cells."""
    if not block:
        return {}
    out: dict[str, Any] = {}
    for key in GOLDEN_KEYS:
        if key in block:
            out[key] = np.array([parse_cell(v) for v in block[key]])
    if "marginals" in block:
        out["marginals"] = [np.array([parse_real(v) for v in m]) for m in block["marginals"]]
    if "quantum_correlated" in block:
        out["quantum_correlated"] = bool(block["quantum_correlated"])
    unknown = set(block) - set(GOLDEN_KEYS) - {"marginals", "quantum_correlated"}
    if unknown:
        raise ConfigError(f"unknown golden keys {sorted(unknown)}")
    return out
