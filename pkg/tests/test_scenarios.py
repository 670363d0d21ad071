import json

import numpy as np
import pytest

from qcorr.config import ConfigError, parse_expected, parse_observable, parse_state
from qcorr.scenarios import (
    BUILTIN_ORDER,
    Scenario,
    ScenarioError,
    builtin_scenarios,
    evaluate,
    get_scenario,
    run,
)
from qcorr.states import DensityOperator, StateDecomposition


@pytest.fixture(scope="module")
def reports():
    return {s.name: run(s) for s in builtin_scenarios()}


def test_builtin_list():
    names = [s.name for s in builtin_scenarios()]
    assert names == list(BUILTIN_ORDER)
    assert len(names) == 9


@pytest.mark.parametrize("name", BUILTIN_ORDER)
def test_builtin_passes(reports, name):
    r = reports[name]
    assert r.passed, r.deviations
    assert r.product_rule


def test_ghz_case1_phi_q(reports):
    np.testing.assert_allclose(reports["ghz_case1"].phi_q.flat(), [4, 0, 0, 0, 0, 0, 0, 4])


def test_ghz_bipartite_phi_q(reports):
    np.testing.assert_allclose(reports["ghz_bipartite"].phi_q.flat(), [2, 0, 0, 2], atol=1e-12)


def test_reduced_w_bell_mix(reports):
    r = reports["reduced_w_bell_mix"]
    np.testing.assert_allclose(r.phi_c.flat(), [1.5, 0.75, 0.75, 1.125], atol=1e-12)
    np.testing.assert_allclose(r.phi_q.flat(), [0, 2, 2, 2 / 3], atol=1e-12)


def test_reduced_ghz_comp_undefined_cells(reports):
    q = reports["reduced_ghz_comp"].phi_q
    assert list(q.defined.ravel()) == [True, False, False, True]
    assert reports["reduced_ghz_comp"].quantum_correlated is False


def test_reduced_pair_same_joint_different_sum(reports):
    comp, bell = reports["reduced_ghz_comp"], reports["reduced_ghz_bell"]
    np.testing.assert_allclose(comp.joint.values, bell.joint.values, atol=1e-12)
    np.testing.assert_allclose(comp.product.values, bell.product.values, atol=1e-12)
    assert np.abs(comp.summed.values - bell.summed.values).max() > 0.1
    np.testing.assert_allclose(comp.joint.values, reports["ghz_bipartite"].joint.values, atol=1e-12)


def test_golden_mismatch_fails():
    s = get_scenario("w_case1")
    data = {
        "name": "broken",
        "state": s.state_spec,
        "observable": s.observable_spec,
        "expected": {"joint": ["1/8"] * 8},
    }
    r = run(Scenario.from_dict(data))
    assert not r.passed
    assert r.deviations["joint"] > 0.1


def test_undefined_mask_mismatch_fails():
    s = get_scenario("reduced_ghz_comp")
    data = {
        "name": "broken",
        "state": s.state_spec,
        "observable": s.observable_spec,
        "expected": {"phi_q": ["1", "1", "1", "1"]},
    }
    assert not run(Scenario.from_dict(data)).passed


def test_golden_grid_mismatch_raises():
    s = get_scenario("w_case1")
    data = {"name": "x", "state": s.state_spec, "observable": s.observable_spec,
            "expected": {"joint": ["1/4"] * 4}}
    with pytest.raises(ScenarioError):
        run(Scenario.from_dict(data))


def test_unresolved_spec():
    with pytest.raises(ScenarioError):
        run(Scenario.from_dict({"name": "x", "state": {"named": "nope"},
                                "observable": {"builder": "local_joint", "axes": ["z"]}}))
    with pytest.raises(ScenarioError):
        get_scenario("nope")


def test_density_operator_gives_total_only():
    rho = parse_state({"reduce": {"named": "w"}, "traced": [3]})
    assert isinstance(rho, DensityOperator)
    r = evaluate(parse_observable({"builder": "local_joint", "axes": ["z", "z"]}), rho)
    assert r.summed is None and r.phi_q is None
    np.testing.assert_allclose(r.phi_t.flat(), [0, 1.5, 1.5, 0.75], atol=1e-12)


def test_parse_amplitude_state_and_raw_effects():
    s = 2 ** -0.5
    state = parse_state({"amplitudes": [[s, 0], 0, 0, [0, s]], "dims": [2, 2]})
    assert state.profile.dims == (2, 2)
    obs = parse_observable({
        "effects": [
            {"outcome": ["1/2"], "matrix": [[1, 0], [0, 0]]},
            {"outcome": ["-1/2"], "matrix": [[0, 0], [0, 1]]},
        ]
    })
    assert obs.grid.shape == (2,)
    mix = parse_state({"dims": [2], "mixture": [
        {"weight": "1/3", "amplitudes": [1, 0]},
        {"weight": 0.5, "state": {"amplitudes": [0, 1]}},
        {"weight": "1/6", "amplitudes": [[0.6, 0], [0, 0.8]]},
    ]})
    assert isinstance(mix, StateDecomposition) and len(mix) == 3


def test_parse_embed_uses_state_dims():
    obs = parse_observable(
        {"builder": "embed", "inner": {"builder": "local_joint", "axes": ["z"]}, "slots": [2]},
        dims=(2, 2, 2),
    )
    assert obs.profile.dims == (2, 2, 2)
    with pytest.raises(ConfigError):
        parse_observable({"builder": "embed", "inner": {"builder": "local_joint", "axes": ["z"]},
                          "slots": [2]})


def test_parse_errors():
    with pytest.raises(ConfigError):
        parse_state({"foo": 1})
    with pytest.raises(ConfigError):
        parse_expected({"joint": ["1/2"], "bogus": []})
    with pytest.raises(ConfigError):
        parse_state({"amplitudes": [[1, 0, 0]]})


def test_scenario_file_roundtrip(tmp_path):
    s = get_scenario("w_case2")
    path = tmp_path / "w2.json"
    path.write_text(json.dumps({"state": s.state_spec, "observable": s.observable_spec,
                                "expected": {"joint": ["5/24", "1/24", "1/24", "5/24",
                                                       "5/24", "1/24", "1/24", "5/24"]}}))
    r = run(Scenario.from_file(path))
    assert r.name == "w2" and r.passed
