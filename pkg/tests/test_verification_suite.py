import pytest

from models.constructors import build_onb
from models.quaternion import Quaternion
from models.signal import FiniteSignal, GaborParams, WindowFamily
from models.verification_suite import VerificationSuite
from utils.errors import ParameterError


def test_suite_passes_on_parseval_family(parseval_4_3_5):
    report = VerificationSuite(parseval_4_3_5, trials=3, seed=1).run()
    assert report["passed"], report["checks"]
    assert report["criterion"] == "verify"
    assert report["params"] == {"L": 4, "M": 3, "N": 5}
    assert "skipped" not in report["checks"]["parseval_identity"]


def test_suite_passes_on_generic_real_family():
    g = FiniteSignal({(0, 0): 1.0, (1, 0): -0.5, (2, 1): 0.25})
    W = WindowFamily(GaborParams(1, 2, 1), [g])
    report = VerificationSuite(W, trials=3, seed=2).run()
    assert report["passed"], report["checks"]
    assert report["checks"]["parseval_identity"]["skipped"]


def test_suite_on_quaternion_windows():
    g = FiniteSignal({(0, 0): Quaternion(0.5, 0.5, 0.0, 0.0), (1, 1): Quaternion(0.0, 0.0, 1.0, -1.0)})
    W = WindowFamily(GaborParams(1, 2, 1), [g])
    report = VerificationSuite(W, trials=2, seed=3).run()
    assert report["passed"], report["checks"]
    assert report["checks"]["f1_f2"]["skipped"]
    assert report["checks"]["commutation"]["difference"] <= 1e-9


def test_suite_is_deterministic(single_point):
    first = VerificationSuite(single_point, trials=2, seed=9).run()
    second = VerificationSuite(single_point, trials=2, seed=9).run()
    assert first == second


def test_suite_on_trivial_basis():
    report = VerificationSuite(build_onb(1, 1), trials=2, seed=0).run()
    assert report["passed"], report["checks"]
    assert report["checks"]["commutation"]["q"] == [0, 0]


def test_suite_needs_a_trial(single_point):
    with pytest.raises(ParameterError):
        VerificationSuite(single_point, trials=0)
