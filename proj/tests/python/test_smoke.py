import json
import math
import os
import pathlib

import numpy as np
import pytest

import qcond

P0 = np.diag([1.0, 0.0])
P1 = np.diag([0.0, 1.0])
PLUS = np.full((2, 2), 0.5)
SCENES = pathlib.Path(os.environ.get("QCOND_SCENE_DIR", pathlib.Path(__file__).parents[2] / "docs" / "scenes"))


def test_prob_and_luders():
    rho = qcond.State.maximally_mixed(2)
    a = qcond.Effect(P0)
    assert qcond.prob(rho, a) == pytest.approx(0.5)
    ctx = qcond.luders(a)
    np.testing.assert_allclose(qcond.apply(ctx.op, rho), np.diag([0.5, 0.0]), atol=1e-15)
    assert qcond.conditional_prob(rho, ctx, qcond.Effect(PLUS)) == pytest.approx(0.5)


def test_holevo_dual():
    a = qcond.Effect(np.array([[0.7, 0.2], [0.2, 0.4]]))
    b = qcond.Effect(np.array([[0.6, 0.1 - 0.2j], [0.1 + 0.2j, 0.3]]))
    alpha = np.array([[0.3, 0.1 + 0.2j], [0.1 - 0.2j, 0.7]])
    ctx = qcond.holevo(a, qcond.State(alpha))
    expected = np.trace(alpha @ b.matrix).real * a.matrix
    np.testing.assert_allclose(qcond.sequential_product(ctx, b).matrix, expected, atol=1e-12)


def test_errors_carry_kind():
    with pytest.raises(qcond.Error) as info:
        qcond.State(np.diag([1.2, -0.2]))
    assert info.value.kind == "ValidationError"
    with pytest.raises(qcond.Error) as info:
        qcond.conditional_prob(qcond.State(P1), qcond.luders(qcond.Effect(P0)), qcond.Effect(P0))
    assert info.value.kind == "ZeroProbabilityCondition"
    with pytest.raises(qcond.Error) as info:
        qcond.run_suite("no-such-suite")
    assert info.value.kind == "UnknownSuite"


def test_instruments_and_bayes1():
    z = qcond.Observable({"0": P0, "1": P1})
    ins = qcond.luders_instrument(z)
    assert ins.labels == ["0", "1"]
    t = qcond.bayes1_check(qcond.State(np.diag([0.75, 0.25])), ins, qcond.Effect(PLUS))
    assert t["lhs"] == pytest.approx(0.5)
    assert t["mid"] == pytest.approx(0.5)
    assert t["rhs"] == pytest.approx(0.5)
    atoms, _ = qcond.atomic_context([z])
    assert len(atoms) == 2


def test_uncertainty_report():
    g = qcond.Generator(5)
    rho = g.random_state(3)
    ins = qcond.luders_instrument(g.random_observable(3, 2))
    b = qcond.RealValuedObservable(g.random_observable(3, 2), {"x0": 1.0, "x1": -1.0})
    c = qcond.RealValuedObservable(g.random_observable(3, 2), {"x0": 2.0, "x1": 0.5})
    r = qcond.uncertainty_report(rho, ins, b, c)
    assert r["identity_residual"] <= 1e-9
    assert r["inequality_slack"] >= -1e-9


def test_entropy():
    assert qcond.effect_entropy(qcond.State(P0), qcond.Effect.identity(2)) == pytest.approx(math.log(2))


def test_run_suite_deterministic():
    a = qcond.run_suite("theorem21", dims=[2], trials=10, seed=3)
    b = qcond.run_suite("theorem21", dims=[2], trials=10, seed=3)
    assert a["ok"]
    assert json.dumps(a) == json.dumps(b)
    assert "duality" in qcond.suite_names()


def test_scenes():
    paths = sorted(SCENES.glob("*.json"))
    assert len(paths) == 9
    for p in paths:
        report = qcond.run_scene(str(p))
        assert report["passed"], p.name


def test_scene_from_dict():
    scene = {
        "objects": {"rho": {"state": [[0.5, 0], [0, 0.5]]}, "P0": {"effect": [[1, 0], [0, 0]]}},
        "checks": [{"name": "p", "check": "prob", "args": ["rho", "P0"], "expect": 0.5}],
    }
    assert qcond.run_scene(scene)["passed"]
    scene["objects"]["rho"] = {"state": [[1.2, 0], [0, -0.2]]}
    with pytest.raises(qcond.Error) as info:
        qcond.validate_scene(scene)
    assert info.value.kind == "ValidationError"
