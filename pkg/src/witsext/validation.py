"""Monte Carlo vs. analytic checks for the scalar strategies."""
from dataclasses import dataclass
import math

from .asymptotic import linear_two_observation_mmse
from .model import ProblemParams, mmse_only_strategy, zero_strategy
from .scalar_ub import binning_strategy, coarse_fine_expression, coarse_fine_strategy
from .simulate import (SimConfig, linear_duplication_strategy, pam_binning_strategy,
                       run, run_gauss_ext)
from .special_fns import psi

__all__ = ["CheckResult", "run_checks", "MIN_SAMPLES_FOR_CHECKS"]

# below this the 3-sigma bands are too wide to say anything
MIN_SAMPLES_FOR_CHECKS = 10_000
N_SIGMA = 3.0


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str  # "pass", "fail" or "skip"
    detail: str

    @property
    def passed(self):
        return self.status != "fail"


def _equal(name, est, se, target):
    ok = abs(est - target) <= N_SIGMA * se
    return CheckResult(name, "pass" if ok else "fail",
                       f"mc={est:.6g} se={se:.3g} analytic={target:.6g}")


def _at_most(name, est, se, bound):
    ok = est - N_SIGMA * se <= bound
    return CheckResult(name, "pass" if ok else "fail",
                       f"mc={est:.6g} se={se:.3g} bound={bound:.6g}")


def run_checks(n_samples=1_000_000, seed=2024):
    """Every simulate-backed check; returns a list of CheckResult in a fixed order."""
    cfg = SimConfig(n_samples=n_samples, seed=seed)
    skip = n_samples < MIN_SAMPLES_FOR_CHECKS
    results = []

    def add(name, fn):
        if skip:
            results.append(CheckResult(name, "skip", f"n={n_samples} too small"))
        else:
            results.append(fn())

    for s2 in (0.5, 1.0, 4.0):
        def check(s2=s2):
            e = run(ProblemParams(1.0, s2), mmse_only_strategy(s2), cfg)
            return _equal(f"mmse_only sigma0_sq={s2:g}", e.mean_stage2, e.stderr_stage2,
                          s2 / (s2 + 1.0))
        add(f"mmse_only sigma0_sq={s2:g}", check)

    def zero_check():
        e = run(ProblemParams(1.0, 2.0), zero_strategy(), cfg)
        return _equal("zero strategy stage2 = sigma0_sq", e.mean_stage2, e.stderr_stage2, 2.0)
    add("zero strategy stage2 = sigma0_sq", zero_check)

    for p in (0.25, 1.0):
        for r in (0, 1, 2):
            name = f"binning P={p:g} R={r} stage2 = psi(3, 2^R sqrt(P))"

            def check(p=p, r=r, name=name):
                e = run(ProblemParams(1.0, 1.0, r), binning_strategy(p, r), cfg)
                return _equal(name, e.mean_stage2, e.stderr_stage2, psi(3, 2.0 ** r * math.sqrt(p)))
            add(name, check)

            pname = f"binning P={p:g} R={r} input power <= P"

            def pcheck(p=p, r=r, pname=pname):
                e = run(ProblemParams(1.0, 1.0, r), binning_strategy(p, r), cfg)
                return _at_most(pname, e.mean_input, e.stderr_input, p)
            add(pname, pcheck)

    for a in (2.0, 4.0):
        for r in (1, 2, 3):
            name = f"coarse_fine a={a:g} R={r} mmse <= bound"

            def check(a=a, r=r, name=name):
                e = run(ProblemParams(1.0, 25.0, r), coarse_fine_strategy(a, r), cfg)
                return _at_most(name, e.mean_stage2, e.stderr_stage2, float(coarse_fine_expression(a, r)))
            add(name, check)

    gp = ProblemParams(1.0, 100.0, p_ex=100.0)

    def lin_check():
        e = run_gauss_ext(gp, linear_duplication_strategy(100.0, 100.0), cfg)
        return _equal("linear duplication = two-observation LMMSE", e.mean_stage2,
                      e.stderr_stage2, linear_two_observation_mmse(1.0, 100.0, 100.0))
    add("linear duplication = two-observation LMMSE", lin_check)

    def pam_check():
        lin = run_gauss_ext(gp, linear_duplication_strategy(100.0, 100.0), cfg)
        pam = run_gauss_ext(gp, pam_binning_strategy(1.0, 100.0, 100.0), cfg)
        gap = pam.mean_total - lin.mean_total
        se = math.hypot(pam.stderr_total, lin.stderr_total)
        ok = gap + N_SIGMA * se < 0
        return CheckResult("pam binning beats linear duplication",
                           "pass" if ok else "fail",
                           f"binning={pam.mean_total:.6g} linear={lin.mean_total:.6g}")
    add("pam binning beats linear duplication", pam_check)
    return results
