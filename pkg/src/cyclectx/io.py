"""Scenario file reading and writing.

Layout::

    {
      "n": 4,
      "observables": [{"label": "X1", "dim": 4, "entries": [[re, im], ...]}, ...],
      "signs": [1, 1, 1, -1],                                   # optional
      "state": {"kind": "pure" | "density", "entries": [[re, im], ...]},  # optional
      "data": {"averages": [...], "correlations": [...]}        # optional
    }

Matrix entries are row-major, ``dim * dim`` pairs. A pure state lists ``dim``
amplitudes. ``data`` holds correlation values in cycle order
``<X1X2>, <X2X3>, ..., <XnX1>``; ``null`` marks an unconstrained entry.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from .classical import CorrelationData
from .errors import ContextualityError, ScenarioFileError
from .linalg import HermitianObservable
from .quantum import QuantumState
from .scenario import CycleScenario, SignPattern, build_cycle_scenario

PURE_NORM_TOL = 1e-6


@dataclass(frozen=True, eq=False)
class ScenarioFile:
    scenario: CycleScenario
    signs: SignPattern
    state: Optional[QuantumState] = None
    data: Optional[CorrelationData] = None


def _complex_list(raw, field, length):
    if not isinstance(raw, list):
        raise ScenarioFileError(field, "expected a list of [re, im] pairs")
    if len(raw) != length:
        raise ScenarioFileError(field, f"expected {length} entries, got {len(raw)}")
    out = np.empty(length, dtype=complex)
    for k, pair in enumerate(raw):
        if (not isinstance(pair, list) or len(pair) != 2
                or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in pair)):
            raise ScenarioFileError(f"{field}[{k}]", "expected [re, im] with numeric parts")
        out[k] = complex(pair[0], pair[1])
    return out


def encode_complex(values) -> list:
    return [[float(z.real), float(z.imag)] for z in np.asarray(values, dtype=complex).ravel()]


def _req(obj, key, field, kind):
    if key not in obj:
        raise ScenarioFileError(f"{field}{key}", "missing required field")
    v = obj[key]
    if kind is int and (not isinstance(v, int) or isinstance(v, bool)):
        raise ScenarioFileError(f"{field}{key}", f"expected an integer, got {v!r}")
    if kind is list and not isinstance(v, list):
        raise ScenarioFileError(f"{field}{key}", "expected a list")
    return v


def parse_scenario(doc) -> ScenarioFile:
    if not isinstance(doc, dict):
        raise ScenarioFileError("<root>", "expected a JSON object")
    known = {"n", "observables", "signs", "state", "data"}
    extra = sorted(set(doc) - known)
    if extra:
        raise ScenarioFileError(extra[0], "unknown field")
    n = _req(doc, "n", "", int)
    raw_obs = _req(doc, "observables", "", list)
    if len(raw_obs) != n:
        raise ScenarioFileError("observables", f"{len(raw_obs)} observables listed but n = {n}")
    obs = []
    for k, o in enumerate(raw_obs):
        f = f"observables[{k}]."
        if not isinstance(o, dict):
            raise ScenarioFileError(f"observables[{k}]", "expected an object")
        dim = _req(o, "dim", f, int)
        if dim < 1:
            raise ScenarioFileError(f + "dim", "must be >= 1")
        entries = _complex_list(_req(o, "entries", f, list), f + "entries", dim * dim)
        label = o.get("label", f"X{k + 1}")
        if not isinstance(label, str):
            raise ScenarioFileError(f + "label", "expected a string")
        try:
            obs.append(HermitianObservable(entries.reshape(dim, dim), label))
        except ContextualityError as exc:
            raise ScenarioFileError(f"observables[{k}]", str(exc)) from exc
    try:
        scenario = build_cycle_scenario(obs)
    except ContextualityError as exc:
        raise ScenarioFileError("observables", str(exc)) from exc

    signs = SignPattern.canonical(n)
    if "signs" in doc:
        raw = doc["signs"]
        if not isinstance(raw, list) or len(raw) != n or any(s not in (1, -1) for s in raw):
            raise ScenarioFileError("signs", f"expected {n} values, each 1 or -1")
        signs = SignPattern(tuple(raw))

    state = None
    if "state" in doc:
        state = _parse_state(doc["state"], scenario.dim)
    data = None
    if "data" in doc:
        data = _parse_data(doc["data"], n)
    return ScenarioFile(scenario, signs, state, data)


def _parse_state(raw, dim) -> QuantumState:
    if not isinstance(raw, dict):
        raise ScenarioFileError("state", "expected an object")
    kind = raw.get("kind")
    if kind not in ("pure", "density"):
        raise ScenarioFileError("state.kind", f"expected 'pure' or 'density', got {kind!r}")
    entries = raw.get("entries")
    try:
        if kind == "pure":
            psi = _complex_list(entries, "state.entries", dim)
            nrm = np.linalg.norm(psi)
            if abs(nrm - 1) > PURE_NORM_TOL:
                raise ScenarioFileError("state.entries", f"state vector has norm {nrm:.9g}")
            return QuantumState.from_vector(psi, normalize=True)
        rho = _complex_list(entries, "state.entries", dim * dim).reshape(dim, dim)
        return QuantumState(rho)
    except ScenarioFileError:
        raise
    except ContextualityError as exc:
        raise ScenarioFileError("state", str(exc)) from exc


def _number_or_null(v, field):
    if v is None:
        return None
    if not isinstance(v, (int, float)) or isinstance(v, bool) or not math.isfinite(v):
        raise ScenarioFileError(field, f"expected a number or null, got {v!r}")
    return float(v)


def _parse_data(raw, n) -> CorrelationData:
    if not isinstance(raw, dict):
        raise ScenarioFileError("data", "expected an object")
    corr = raw.get("correlations")
    if not isinstance(corr, list) or len(corr) != n:
        raise ScenarioFileError("data.correlations", f"expected a list of {n} values")
    corr = [_number_or_null(v, f"data.correlations[{k}]") for k, v in enumerate(corr)]
    avgs = raw.get("averages")
    if avgs is not None:
        if not isinstance(avgs, list) or len(avgs) != n:
            raise ScenarioFileError("data.averages", f"expected a list of {n} values")
        avgs = [_number_or_null(v, f"data.averages[{k}]") for k, v in enumerate(avgs)]
    try:
        return CorrelationData.from_cycle(corr, avgs)
    except ContextualityError as exc:
        raise ScenarioFileError("data", str(exc)) from exc


def load_scenario(path) -> ScenarioFile:
    path = Path(path)
    text = path.read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioFileError("<root>", f"malformed JSON: {exc}") from exc
    return parse_scenario(doc)


def scenario_to_dict(scenario: CycleScenario, signs=None, state=None, data=None,
                     pure_vector=None) -> dict:
    doc = {
        "n": scenario.n,
        "observables": [{"label": o.label or f"X{k + 1}", "dim": o.dim,
                         "entries": encode_complex(o.matrix)}
                        for k, o in enumerate(scenario.observables)],
    }
    if signs is not None:
        doc["signs"] = list(signs)
    if pure_vector is not None:
        doc["state"] = {"kind": "pure", "entries": encode_complex(pure_vector)}
    elif state is not None:
        doc["state"] = {"kind": "density", "entries": encode_complex(state.matrix)}
    if data is not None:
        doc["data"] = {"averages": list(data.averages), "correlations": data.cycle_vector()}
    return doc
