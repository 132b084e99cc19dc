import logging
from typing import Any, Dict, Optional

import numpy as np

from models.duality import mixed_sum
from models.frame_analysis import parseval_check
from models.gabor_ops import atom, coeff, commutation_probe, frame_functional, frame_operator_apply
from models.matrix_fn import f1_f2_decomposition
from models.oracle import oracle_frame_functional, oracle_gram, oracle_mixed_sum
from models.signal import WindowFamily, inner, random_signal
from utils.config import get_default_seed, get_default_trials, resolve_tolerance
from utils.errors import ConsistencyError, ParameterError

logger = logging.getLogger(__name__)


def _relative(a: float, b: float) -> float:
    return abs(a - b) / max(1.0, abs(b))


class VerificationSuite:
    """
    Cross-checks the fast evaluations against the brute-force oracle on
    seeded random signals: functional, frame operator, F1/F2 split, Parseval
    identity, atom Gram entries, mixed sum and the modulation probe.
    """

    def __init__(self, W: WindowFamily, trials: Optional[int] = None, seed: Optional[int] = None,
                 tol: Optional[float] = None, support_radius: int = 2):
        """
        Args:
            W: Window family under test
            trials: Random signals per check (QGABOR_TRIALS when omitted)
            seed: Base seed; each check derives its own stream from it
            tol: Relative tolerance for every comparison
            support_radius: Radius of the random test signals
        """
        self.W = W
        self.trials = get_default_trials() if trials is None else trials
        if self.trials < 1:
            raise ParameterError(f"trials must be at least 1, got {self.trials}")
        self.seed = get_default_seed() if seed is None else seed
        self.tol = resolve_tolerance(tol)
        self.support_radius = support_radius

    def _signals(self, salt: int):
        rng = np.random.default_rng([self.seed, salt])
        return [random_signal(rng, self.support_radius) for _ in range(self.trials)]

    def check_functional(self) -> Dict[str, Any]:
        worst = 0.0
        for h in self._signals(1):
            worst = max(worst, _relative(frame_functional(self.W, h), oracle_frame_functional(self.W, h)))
        return {"passed": worst <= self.tol, "max_relative_error": worst}

    def check_operator(self) -> Dict[str, Any]:
        worst = 0.0
        for h in self._signals(2):
            quadratic = inner(frame_operator_apply(self.W, h), h)
            functional = frame_functional(self.W, h)
            worst = max(worst, _relative(quadratic.a0, functional), abs(quadratic.a1),
                        abs(quadratic.a2), abs(quadratic.a3))
        return {"passed": worst <= self.tol, "max_error": worst}

    def check_f1_f2(self) -> Dict[str, Any]:
        if not self.W.is_real:
            return {"passed": True, "skipped": "quaternion-valued windows"}
        worst = 0.0
        for h in self._signals(3):
            f1, f2 = f1_f2_decomposition(self.W, h)
            worst = max(worst, _relative(f1 + f2, frame_functional(self.W, h)))
        return {"passed": worst <= self.tol, "max_relative_error": worst}

    def check_parseval_identity(self) -> Dict[str, Any]:
        if not self.W.is_real or not parseval_check(self.W, self.tol)["holds"]:
            return {"passed": True, "skipped": "family is not a Parseval frame by the row criterion"}
        worst = 0.0
        for h in self._signals(4):
            worst = max(worst, _relative(frame_functional(self.W, h), h.norm2()))
        return {"passed": worst <= self.tol, "max_relative_error": worst}

    def check_gram(self, size: int = 6) -> Dict[str, Any]:
        rng = np.random.default_rng([self.seed, 5])
        indices = []
        for _ in range(size):
            l = int(rng.integers(self.W.L))
            m = (int(rng.integers(self.W.M)), int(rng.integers(self.W.M)))
            n = (int(rng.integers(-1, 2)), int(rng.integers(-1, 2)))
            indices.append((l, m, n))
        gram = oracle_gram(self.W, indices)
        worst = 0.0
        for a, (la, ma, na) in enumerate(indices):
            for b, (lb, mb, nb) in enumerate(indices):
                fast = coeff(self.W.windows[la], ma, na, atom(self.W.windows[lb], mb, nb, self.W.params),
                             self.W.params)
                worst = max(worst, (fast - gram[a][b]).modulus())
        return {"passed": worst <= self.tol, "max_error": worst, "size": size}

    def check_mixed_sum(self) -> Dict[str, Any]:
        if not self.W.is_real:
            return {"passed": True, "skipped": "quaternion-valued windows"}
        worst = 0.0
        signals = self._signals(6)
        for f, phi in zip(signals, signals[1:] + signals[:1]):
            try:
                value = mixed_sum(self.W, self.W, f, phi, self.tol)
            except ConsistencyError as exc:
                return {"passed": False, "error": str(exc)}
            reference = oracle_mixed_sum(self.W, self.W, f, phi)
            worst = max(worst, (value - reference).modulus() / max(1.0, reference.modulus()))
        return {"passed": worst <= self.tol, "max_relative_error": worst}

    def check_commutation(self) -> Dict[str, Any]:
        h = self._signals(7)[0]
        # (1, 1) reduced into N_M², the zero index when M = 1
        q = (1 % self.W.M, 1 % self.W.M)
        probe = commutation_probe(self.W, h, q=q)
        scale = max(1.0, float(np.linalg.norm(probe["S_of_modulated"])))
        probe["passed"] = probe["difference"] <= self.tol * scale
        return probe

    def run(self) -> Dict[str, Any]:
        """
        Run every cross-check on the family

        Returns:
            Dict with per-check results under "checks" and an overall "passed" flag
        """
        checks = {
            "frame_functional": self.check_functional(),
            "frame_operator": self.check_operator(),
            "f1_f2": self.check_f1_f2(),
            "parseval_identity": self.check_parseval_identity(),
            "gram": self.check_gram(),
            "mixed_sum": self.check_mixed_sum(),
            "commutation": self.check_commutation(),
        }
        failed = [name for name, result in checks.items() if not result["passed"]]
        if failed:
            logger.warning("verification failed: %s", ", ".join(failed))
        return {
            "criterion": "verify",
            "params": self.W.params.to_dict(),
            "trials": self.trials,
            "seed": self.seed,
            "tolerance": self.tol,
            "checks": checks,
            "passed": not failed,
        }
