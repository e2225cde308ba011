import json
import math
import os
from pathlib import Path

import pytest

import cqm

MODELS = Path(os.environ.get("CQM_MODELS_DIR", Path(__file__).resolve().parents[2] / "models"))


def model(name):
    return str(MODELS / f"{name}.model")


def test_load_model():
    m = cqm.load_model(model("uniform_b_galilei"))
    assert m.name == "uniform_b_galilei"
    assert m.framework == cqm.Framework.galilei
    assert m.constants["B"] == pytest.approx(0.8)
    assert "drift" in m.observers


def test_lorentz_factor():
    g = cqm.EinsteinGeometry(cqm.load_model(model("minkowski")))
    assert g.alpha([0, 0, 0, 0, 0.6, 0, 0]) == pytest.approx(1.25, abs=1e-15)
    with pytest.raises(cqm.LightconeViolation):
        g.alpha([0, 0, 0, 0, 2, 0, 0])
    assert max(g.technical_identities([0.1, 0.2, 0.3, 0.4, 0.2, -0.1, 0.3]).values()) < 1e-9


def test_cyclotron_acceleration():
    g = cqm.GalileiGeometry(cqm.load_model(model("uniform_b_galilei")))
    assert g.gamma([0, 0, 0, 0, 0.5, 0, 0])[1] == pytest.approx(-0.4, abs=1e-14)


def test_verify_and_determinism():
    r = cqm.verify(model("flat_galilei"), "galilei-core", points=20, seed=3)
    assert r.passed
    assert [c.name for c in r.records] == cqm.suites()["galilei-core"]
    again = cqm.verify(model("flat_galilei"), "galilei-core", points=20, seed=3)
    assert r.json() == again.json()
    assert json.loads(r.json())["pass"] is True


def test_verify_errors():
    with pytest.raises(cqm.FrameworkMismatch):
        cqm.verify(model("minkowski"), "galilei-core")
    with pytest.raises(cqm.UsageError):
        cqm.verify(model("minkowski"), "orbits", tolerances={"nope": 1.0})
    with pytest.raises(cqm.ParseError):
        cqm.load_model(model("missing"))


def test_failing_check():
    r = cqm.verify(model("flat_galilei"), "galilei-core", points=10, tolerances={"volume": 10.0}, checks=["volume"])
    assert not r.passed
    assert r.records[0].residual == pytest.approx(0.75)


def test_orbit():
    m = cqm.load_model(model("uniform_b_galilei"))
    t = cqm.orbit(m, [0, 0, 0, 0], [0.5, 0, 0], 1.0, 1e-2)
    assert len(t.s) == len(t.z) == 101
    assert t.max_residual < 1e-6
    # speed is conserved in a magnetic field
    assert math.hypot(*t.z[-1][4:6]) == pytest.approx(0.5, rel=1e-8)
    with pytest.raises(cqm.BoxExit):
        cqm.orbit(cqm.load_model(model("flat_galilei")), [0, 0, 0, 0], [100, 0, 0], 1.0)
