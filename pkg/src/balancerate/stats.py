"""Sample statistics and the Delta-method interval for a product of means.

The global balance-rate estimate is a product of independent per-block sample
means.  Its first-order asymptotic standard error is

    se = sqrt( (1/N) * sum_j (prod_{t != j} mean_t)^2 * var_j )

with a common sample count N across blocks, and the (1 - delta) interval is
point -/+ z_{1-delta/2} * se, clamped to [0, 1] for reporting.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np


@dataclass(frozen=True)
class BlockStats:
    mean: float
    var: Optional[float]  # unbiased (N-1 denominator); None when count < 2
    count: int


@dataclass(frozen=True)
class DeltaInterval:
    point: float
    lo: float
    hi: float
    se: float


def mean_and_unbiased_variance(samples: Sequence[float]) -> BlockStats:
    """Sample mean and unbiased variance; variance is None for a single sample."""
    x = np.asarray(samples, dtype=np.float64)
    if x.size == 0:
        raise ValueError("empty sample sequence")
    mean = float(np.mean(x))
    var = float(np.var(x, ddof=1)) if x.size >= 2 else None
    return BlockStats(mean=mean, var=var, count=int(x.size))


# Acklam's rational approximation to the inverse standard normal CDF,
# refined below by a Halley step against math.erf.
_A = (-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
      1.383577518672690e+02, -3.066479806614716e+01, 2.506628277459239e+00)
_B = (-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
      6.680131188771972e+01, -1.328068155288572e+01)
_C = (-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
      -2.549732539343734e+00, 4.374664141464968e+00, 2.938163982698783e+00)
_D = (7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
      3.754408661907416e+00)
_P_LOW = 0.02425


def _std_normal_cdf(x: float) -> float:
    return 0.5 * (1.0 + math.erf(x / math.sqrt(2.0)))


def normal_quantile(q: float) -> float:
    """Inverse standard normal CDF, |error| well below 1e-8 on (1e-6, 1-1e-6)."""
    if not 0.0 < q < 1.0:
        raise ValueError(f"quantile argument {q} outside (0, 1)")
    if q < _P_LOW:
        u = math.sqrt(-2.0 * math.log(q))
        x = ((((((_C[0] * u + _C[1]) * u + _C[2]) * u + _C[3]) * u + _C[4]) * u
              + _C[5])
             / ((((_D[0] * u + _D[1]) * u + _D[2]) * u + _D[3]) * u + 1.0))
    elif q <= 1.0 - _P_LOW:
        u = q - 0.5
        r = u * u
        x = ((((((_A[0] * r + _A[1]) * r + _A[2]) * r + _A[3]) * r + _A[4]) * r
              + _A[5]) * u
             / (((((_B[0] * r + _B[1]) * r + _B[2]) * r + _B[3]) * r + _B[4]) * r
                + 1.0))
    else:
        u = math.sqrt(-2.0 * math.log(1.0 - q))
        x = -((((((_C[0] * u + _C[1]) * u + _C[2]) * u + _C[3]) * u + _C[4]) * u
               + _C[5])
              / ((((_D[0] * u + _D[1]) * u + _D[2]) * u + _D[3]) * u + 1.0))
    # one Halley refinement against the double-precision erf
    err = _std_normal_cdf(x) - q
    t = err * math.sqrt(2.0 * math.pi) * math.exp(0.5 * x * x)
    return x - t / (1.0 + 0.5 * x * t)


def delta_interval(stats: Sequence[BlockStats], delta: float) -> DeltaInterval:
    """Delta-method CI for the product of independent block means.

    Requires a common sample count N >= 2 across blocks (the derivation
    assumes one).  The reported bounds are clamped to [0, 1]; the unclamped
    standard error is returned alongside.
    """
    if not 0.0 < delta < 1.0:
        raise ValueError(f"delta {delta} outside (0, 1)")
    if not stats:
        return DeltaInterval(point=1.0, lo=1.0, hi=1.0, se=0.0)
    counts = {s.count for s in stats}
    if len(counts) != 1:
        raise ValueError(f"mismatched sample counts across blocks: {sorted(counts)}")
    n = counts.pop()
    if n < 2:
        raise ValueError("delta interval requires at least 2 samples per block")
    means = np.array([s.mean for s in stats], dtype=np.float64)
    variances = np.array([s.var for s in stats], dtype=np.float64)
    point = float(np.prod(means))
    k = means.size
    grad_sq = np.empty(k)
    for j in range(k):
        grad_sq[j] = np.prod(np.delete(means, j)) ** 2
    se = math.sqrt(float(np.dot(grad_sq, variances)) / n)
    z = normal_quantile(1.0 - delta / 2.0)
    lo = max(0.0, point - z * se)
    hi = min(1.0, point + z * se)
    return DeltaInterval(point=point, lo=lo, hi=hi, se=se)
