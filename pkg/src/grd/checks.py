"""Formula-versus-oracle verification suite behind ``grd check``."""

from __future__ import annotations

import math
import warnings

import numpy as np

from . import oracle
from .core import GrdParams, normalizing_constant_zero_sum, validate_params
from .mixture import loggap_law_zero_sum, loggap_mgf, loggap_moments
from .moments import (
    calibrate_first_moment,
    mean_vector_m1,
    negative_moment_y1,
    positive_moments,
    ratio_moment_zero_sum,
)
from .series import DEFAULT_K, expected_power_y1_series, loggap_moments_series, y1_moment

__all__ = ["run_suite", "check_samples", "SIGMA_BOUND"]

SIGMA_BOUND = 4.0


def _rel(x: float, y: float) -> float:
    return abs(x - y) / max(abs(y), 1e-300)


def _entry(name, formula, reference, tol, source="quadrature") -> dict:
    err = _rel(formula, reference)
    return {
        "name": name,
        "formula": formula,
        "reference": reference,
        "reference_source": source,
        "rel_error": err,
        "tol": tol,
        "passed": bool(err <= tol),
    }


def run_suite() -> dict:
    """Compare every closed form and series against quadrature or exact arithmetic."""
    out = []
    for a in ([-1, 1], [-2, 2], [-0.3, 0.3], [-5, 2, 3], [-1.2, 0.7, 0.5], [-4, 1, 3]):
        p = validate_params(a)
        q = oracle.quadrature_moment(a).value
        out.append(_entry(f"Q{a}", normalizing_constant_zero_sum(p), q, 1e-8))
        for M in (1, 2, 3):
            ref = oracle.quadrature_moment(a, oracle.inverse_y1(M), normalize=True).value
            out.append(_entry(f"E[Y1^-{M}] a={a}", negative_moment_y1(p, M), ref, 1e-7))
        n = [0] * (len(a) - 1) + [1]
        ref = oracle.quadrature_moment(a, oracle.ratio(n, 2), normalize=True).value
        out.append(_entry(f"E[Yd/Y1^2] a={a}", ratio_moment_zero_sum(p, n, 2), ref, 1e-7))
    for a in ([-3, 2], [-4, 2], [-2.5, -0.5, 2], [-3, 0.4, 0.6]):
        p = validate_params(a)
        M = p.negative_integer_sum
        for k in range(len(a)):
            n = [0] * len(a)
            n[k] = M
            ref = oracle.quadrature_moment(a, oracle.monomial(n), normalize=True).value
            out.append(_entry(f"E[Y{k + 1}^{M}] a={a}", positive_moments(p, n), ref, 1e-7))
        gap = [1] + [0] * (len(a) - 2)
        ref = oracle.quadrature_moment(a, oracle.loggap_monomial(gap), normalize=True).value
        out.append(_entry(f"E[Z2] a={a}", loggap_moments(p, gap), ref, 1e-7))
    y = [0.5, 0.3, 0.2]
    mean = mean_vector_m1(calibrate_first_moment(y))
    worst = float(np.max(np.abs(mean - y)))
    out.append({
        "name": "calibrate round trip",
        "formula": mean.tolist(),
        "reference": y,
        "reference_source": "target",
        "abs_error": worst,
        "tol": 1e-9,
        "passed": worst <= 1e-9,
    })
    p = validate_params([-1, 1])
    out.append(_entry("E[Y1^-0.5] series", expected_power_y1_series(p, 0.5)[0],
                      (2.0 / 3.0) * (2.0**1.5 - 1.0), 1e-6, "closed-form integral"))
    for a in ([-3, 0.5, 1], [-1.7, 1.2]):
        p = validate_params(a)
        gap = [1] + [0] * (len(a) - 2)
        ref = oracle.quadrature_moment(a, oracle.loggap_monomial(gap), normalize=True).value
        out.append(_entry(f"E[Z2] series a={a}", loggap_moments_series(p, gap, 30), ref, 1e-6))
        ref = oracle.quadrature_moment(a, oracle.power_y1(1.0), normalize=True).value
        out.append(_entry(f"E[Y1] series a={a}", y1_moment(p, 1.0)[0], ref, 1e-7))
    p = validate_params([-3, 2])
    h = 1e-5
    fd = (loggap_mgf(p, [h]) - loggap_mgf(p, [-h])) / (2 * h)
    out.append(_entry("MGF derivative a=[-3, 2]", fd, loggap_moments(p, [1]), 1e-6, "formula"))
    return {"passed": all(e["passed"] for e in out), "checks": out}


def check_samples(p: GrdParams, samples: np.ndarray, K: int = DEFAULT_K) -> dict:
    """Compare sample means with the formula values available for ``p``.

    Each check passes when the estimate is within ``SIGMA_BOUND`` standard
    errors of the formula value.
    """
    samples = np.asarray(samples, dtype=float)
    targets: list[tuple[str, str, float]] = []
    if p.is_zero_sum:
        targets.append(("E[1/Y1]", "inv_y1", negative_moment_y1(p, 1)))
        for k, rate in enumerate(loggap_law_zero_sum(p), start=2):
            targets.append((f"E[Z{k}]", f"z{k}", 1.0 / rate))
    elif p.negative_integer_sum is not None:
        for k in range(p.d):
            n = [0] * p.d
            n[k] = 1
            targets.append((f"E[Y{k + 1}]", f"y{k + 1}", positive_moments(p, n)))
        for k in range(2, p.d + 1):
            n = [0] * (p.d - 1)
            n[k - 2] = 1
            targets.append((f"E[Z{k}]", f"z{k}", loggap_moments(p, n)))
    else:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            targets.append(("E[Y1]", "y1", y1_moment(p, 1.0)[0]))
            for k in range(2, p.d + 1):
                n = [0] * (p.d - 1)
                n[k - 2] = 1
                targets.append((f"E[Z{k}]", f"z{k}", loggap_moments_series(p, n, K)))
    out = []
    for name, stat, target in targets:
        est = oracle.mc_estimate(samples, stat)
        z = est.z_score(target)
        out.append({
            "name": name,
            "estimate": est.estimate,
            "se": est.se,
            "target": target,
            "z": z,
            "passed": bool(math.isfinite(z) and abs(z) <= SIGMA_BOUND),
        })
    return {"passed": all(e["passed"] for e in out), "n": int(samples.shape[0]), "checks": out}
