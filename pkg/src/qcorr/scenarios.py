"""Named (state, observable) experiments and the pipeline that evaluates them.

The pipeline is: measure -> single-axis marginals -> product table ->
sum table -> total/classical/quantum correlation functions.  Builtin
scenarios live as JSON files under ``qcorr/data/scenarios`` with golden
values written as exact fractions.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any, Optional, Union

import numpy as np

from .config import ConfigError, parse_expected, parse_observable, parse_state
from .correlation import (
    CONSTANCY_TOL,
    CorrelationTable,
    classical_correlation,
    is_quantum_correlated,
    product_rule_check,
    quantum_correlation,
    total_correlation,
)
from .observables import DiscreteObservable
from .probability import (
    ProbabilityTable,
    marginal_tables,
    measure,
    product_table,
    sum_table,
)
from .states import DensityOperator, PureState, StateDecomposition

GOLDEN_TOL = 1e-10


class ScenarioError(ValueError):
    pass


@dataclass(frozen=True)
class Scenario:
    name: str
    state_spec: dict
    observable_spec: dict
    description: str = ""
    expected: dict = field(default_factory=dict)
    notes: str = ""

    @classmethod
    def from_dict(cls, data: dict) -> Scenario:
        try:
            return cls(
                name=data["name"],
                state_spec=data["state"],
                observable_spec=data["observable"],
                description=data.get("description", ""),
                expected=parse_expected(data.get("expected")),
                notes=data.get("notes", ""),
            )
        except KeyError as e:
            raise ScenarioError(f"scenario is missing field {e}") from None

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> Scenario:
        data = json.loads(Path(path).read_text())
        data.setdefault("name", Path(path).stem)
        return cls.from_dict(data)

    def resolve(self):
        try:
            state = parse_state(self.state_spec)
            obs = parse_observable(self.observable_spec, state.profile.dims)
        except (ConfigError, KeyError, TypeError) as e:
            raise ScenarioError(f"{self.name}: cannot resolve specs: {e}") from e
        return state, obs


@dataclass
class RunReport:
    name: str
    grid: Any
    joint: ProbabilityTable
    marginals: list[ProbabilityTable]
    product: ProbabilityTable
    phi_t: CorrelationTable
    summed: Optional[ProbabilityTable] = None
    phi_c: Optional[CorrelationTable] = None
    phi_q: Optional[CorrelationTable] = None
    quantum_correlated: Optional[bool] = None
    product_rule: Optional[bool] = None
    deviations: dict[str, float] = field(default_factory=dict)
    flag_mismatches: list[str] = field(default_factory=list)
    tolerance: float = GOLDEN_TOL

    @property
    def passed(self) -> bool:
        if self.product_rule is False or self.flag_mismatches:
            return False
        return all(d <= self.tolerance for d in self.deviations.values())

    def tables(self) -> dict[str, Union[ProbabilityTable, CorrelationTable]]:
        out = {"joint": self.joint, "product": self.product}
        if self.summed is not None:
            out["sum"] = self.summed
        out["phi_t"] = self.phi_t
        if self.phi_c is not None:
            out["phi_c"] = self.phi_c
            out["phi_q"] = self.phi_q
        return out


def _deviation(computed: np.ndarray, golden: np.ndarray) -> float:
    """Max absolute deviation; a mismatch in UNDEFINED cells counts as infinite."""
    computed = np.asarray(computed, dtype=float).ravel()
    golden = np.asarray(golden, dtype=float).ravel()
    if computed.shape != golden.shape:
        raise ScenarioError(
            f"golden table has {golden.size} cells, computed has {computed.size}"
        )
    cu, gu = np.isnan(computed), np.isnan(golden)
    if np.any(cu != gu):
        return float("inf")
    if np.all(cu):
        return 0.0
    return float(np.max(np.abs(computed[~cu] - golden[~gu])))


def evaluate(
    obs: DiscreteObservable,
    state: Union[PureState, StateDecomposition, DensityOperator],
    name: str = "adhoc",
) -> RunReport:
    """Compute every applicable table for one (observable, state) pair.

    A bare density operator has no statistical content, so only the joint,
    product and total-correlation tables are produced for it.
    """
    joint = measure(obs, state)
    margs = marginal_tables(joint)
    product = product_table(margs)
    report = RunReport(
        name=name,
        grid=obs.grid,
        joint=joint,
        marginals=margs,
        product=product,
        phi_t=total_correlation(joint, product),
    )
    if isinstance(state, PureState):
        state = StateDecomposition.pure(state)
    if isinstance(state, StateDecomposition):
        summed = sum_table(obs, state)
        report.summed = summed
        report.phi_c = classical_correlation(summed, product)
        report.phi_q = quantum_correlation(joint, summed)
        report.quantum_correlated = is_quantum_correlated(report.phi_q)
        report.product_rule = product_rule_check(
            report.phi_t, report.phi_c, report.phi_q, CONSTANCY_TOL
        )
    return report


def check_golden(report: RunReport, expected: dict) -> RunReport:
    tables = report.tables()
    for key in ("joint", "product", "sum", "phi_t", "phi_c", "phi_q"):
        if key not in expected:
            continue
        if key not in tables:
            raise ScenarioError(f"{report.name}: golden '{key}' given but not computable")
        report.deviations[key] = _deviation(tables[key].values, expected[key])
    if "marginals" in expected:
        gold = expected["marginals"]
        if len(gold) != len(report.marginals):
            raise ScenarioError(f"{report.name}: wrong number of golden marginals")
        for i, (m, g) in enumerate(zip(report.marginals, gold)):
            report.deviations[f"marginal[{i}]"] = _deviation(m.values, g)
    if "quantum_correlated" in expected:
        if report.quantum_correlated != expected["quantum_correlated"]:
            report.flag_mismatches.append("quantum_correlated")
    return report


def run(scenario: Scenario) -> RunReport:
    state, obs = scenario.resolve()
    report = evaluate(obs, state, scenario.name)
    return check_golden(report, scenario.expected)


BUILTIN_ORDER = (
    "ghz_case1",
    "ghz_case2",
    "w_case1",
    "w_case2",
    "ghz_bipartite",
    "reduced_ghz_comp",
    "reduced_ghz_bell",
    "w_bipartite",
    "reduced_w_bell_mix",
)


def builtin_scenarios() -> list[Scenario]:
    root = resources.files("qcorr") / "data" / "scenarios"
    out = []
    for name in BUILTIN_ORDER:
        data = json.loads((root / f"{name}.json").read_text())
        out.append(Scenario.from_dict(data))
    return out


def get_scenario(name: str) -> Scenario:
    for s in builtin_scenarios():
        if s.name == name:
            return s
    raise ScenarioError(f"no builtin scenario named {name!r}")
