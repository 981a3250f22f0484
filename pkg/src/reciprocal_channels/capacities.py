"""Closed-form capacities, CP ranges and asymmetry ratios.

Capacities are in bits. For a depolarizing channel (DC) of dimension ``d`` and
parameter ``lam`` the unassisted capacity is ``log2 d`` minus the minimum
output entropy. The entanglement-assisted capacity equals the unassisted
capacity of the ``d^2``-dimensional DC with the same parameter. For a
Weyl-covariant channel (WCC) with weights ``p`` the entanglement-assisted
capacity is ``2 log2 d - H(p)``.

The unassisted capacity of a general WCC is deliberately absent: additivity
is only established for d = 2.
"""

import math
from dataclasses import asdict, dataclass

import numpy as np

from .channels import (
    WCCSpec,
    dc_weyl_distribution,
    kraus_from_choi,
    mixer_weyl_distribution,
    require_channel,
)
from .errors import CPViolationError, DimensionError, UndefinedRatioError
from .linalg import entropy_of_weights, check_probability_vector, shannon_entropy

PARAM_TOL = 1e-12
RATIO_DENOMINATOR_TOL = 1e-12

KINDS = ("UA", "EA", "Q_EA")


@dataclass(frozen=True)
class CapacityReport:
    channel_desc: dict
    kind: str
    value: float
    method: str = "closed_form"

    def to_json(self):
        return asdict(self)


@dataclass(frozen=True)
class CPRange:
    """Interval of mixer parameters keeping ``lam Phi + (1-lam) D_0`` CP."""

    lambda_min: float
    lambda_max: float

    @property
    def reciprocal_bound(self):
        return min(abs(self.lambda_min), abs(self.lambda_max))

    def to_json(self):
        return {
            "lambda_min": _json_float(self.lambda_min),
            "lambda_max": _json_float(self.lambda_max),
            "reciprocal_bound": _json_float(self.reciprocal_bound),
        }


def _json_float(x):
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return x


def _check_dimension(d):
    if int(d) != d or d < 2:
        raise DimensionError(f"dimension must be an integer >= 2, got {d!r}")
    return int(d)


def lambda_min_dc(d):
    """Most negative CP depolarizing parameter, ``-1/(d^2 - 1)``."""
    d = _check_dimension(d)
    return -1.0 / (d * d - 1)


def _check_dc_lambda(d, lam):
    lo = lambda_min_dc(d)
    if not (lo - PARAM_TOL <= lam <= 1 + PARAM_TOL):
        raise CPViolationError(f"lambda={lam!r} outside the CP interval [{lo:.6g}, 1] for d={d}")


def _dc_output_entropy(d, lam):
    # one eigenvalue (1+(d-1)lam)/d and d-1 copies of (1-lam)/d
    big = max((1 + (d - 1) * lam) / d, 0.0)
    small = max((1 - lam) / d, 0.0)
    return entropy_of_weights(np.array([big])) + (d - 1) * entropy_of_weights(np.array([small]))


def smin_dc(d, lam):
    """Minimum output entropy of the depolarizing channel, in bits."""
    d = _check_dimension(d)
    _check_dc_lambda(d, lam)
    return _dc_output_entropy(d, lam)


def c_ua_dc(d, lam):
    """Unassisted classical capacity ``log2 d - S_min``."""
    d = _check_dimension(d)
    _check_dc_lambda(d, lam)
    return max(math.log2(d) - _dc_output_entropy(d, lam), 0.0)


def c_ea_dc(d, lam):
    """Entanglement-assisted classical capacity of the d-dimensional DC.

    Evaluated as the unassisted formula at dimension ``d^2``. The d^2 entropy
    expression stays a valid distribution on the whole ``[-1/(d^2-1), 1]``
    interval, even where the d^2-dimensional map itself is not CP.
    """
    d = _check_dimension(d)
    _check_dc_lambda(d, lam)
    dd = d * d
    return max(math.log2(dd) - _dc_output_entropy(dd, lam), 0.0)


def c_ea_wcc(spec):
    """``2 log2 d - H(p)`` for a Weyl-covariant channel."""
    return max(2 * math.log2(spec.d) - shannon_entropy(spec.p), 0.0)


def q_ea(c_ea):
    """Entanglement-assisted quantum capacity, half the classical one."""
    if c_ea < 0:
        raise ValueError("capacity must be nonnegative")
    return c_ea / 2


def cp_range_wcc(q, d):
    """CP interval of mixers over the WCC with weights ``q``.

    The lower end is the max of ``1/(1 - d^2 q_z)`` over ``q_z > 1/d^2``, the
    upper end the min over ``q_z < 1/d^2``. The uniform distribution gives an
    unbounded interval.
    """
    d = _check_dimension(d)
    q = check_probability_vector(q)
    if q.size != d * d:
        raise DimensionError(f"expected {d * d} weights, got {q.size}")
    dd = d * d
    above = q[q > 1 / dd + 1e-15]
    below = q[q < 1 / dd - 1e-15]
    lo = float(np.max(1 / (1 - dd * above))) if above.size else -math.inf
    hi = float(np.min(1 / (1 - dd * below))) if below.size else math.inf
    return CPRange(lo, hi)


def _dc_capacity(kind):
    kind = kind.upper()
    if kind == "UA":
        return c_ua_dc
    if kind == "EA":
        return c_ea_dc
    raise ValueError(f"kind must be 'UA' or 'EA', got {kind!r}")


def _ratio(c_neg, c_pos):
    if c_pos <= RATIO_DENOMINATOR_TOL:
        raise UndefinedRatioError("capacity of the positive member vanishes")
    return (c_neg - c_pos) / c_pos


def asymmetry_ratio_dc(d, abs_lambda, kind):
    """Relative capacity gain of ``DC(-|lam|)`` over ``DC(+|lam|)``."""
    d = _check_dimension(d)
    capacity = _dc_capacity(kind)
    bound = abs(lambda_min_dc(d))
    if abs_lambda <= 0:
        raise UndefinedRatioError("asymmetry ratio is undefined at |lambda| = 0")
    if abs_lambda > bound + PARAM_TOL:
        raise CPViolationError(f"|lambda|={abs_lambda!r} exceeds the reciprocal bound {bound:.6g}")
    abs_lambda = min(abs_lambda, bound)
    return _ratio(capacity(d, -abs_lambda), capacity(d, abs_lambda))


def asymmetry_ratio_wcc_ea(q, d, abs_lambda):
    """Entanglement-assisted asymmetry ratio of the mixer pair over ``Phi_q``."""
    q = check_probability_vector(q)
    cp = cp_range_wcc(q, d)
    if abs_lambda > cp.reciprocal_bound * (1 + 1e-12):
        raise CPViolationError(
            f"|lambda|={abs_lambda!r} exceeds the reciprocal bound {cp.reciprocal_bound:.6g}"
        )
    c = []
    for lam in (-abs_lambda, abs_lambda):
        p = np.clip(mixer_weyl_distribution(q, lam), 0.0, None)
        c.append(max(2 * math.log2(d) - entropy_of_weights(p / p.sum()), 0.0))
    return _ratio(c[0], c[1])


def max_asymmetry_ratio_wcc_ea(q, d):
    """EA asymmetry ratio at the largest admissible |lambda|; NaN if undefined."""
    bound = cp_range_wcc(q, d).reciprocal_bound
    if math.isinf(bound):
        return math.nan
    try:
        return asymmetry_ratio_wcc_ea(q, d, bound)
    except UndefinedRatioError:
        return math.nan


def wcc_asymmetry_grid(resolution):
    """Maximum EA asymmetry ratio over the qubit WCC simplex.

    ``(q1, q2, q3)`` are the weights of labels (0,1), (1,0), (1,1) on a grid of
    spacing ``1/(resolution-1)``; the identity weight is the remainder. Each
    point is evaluated at its own reciprocal bound, NaN where undefined.
    """
    if resolution < 2:
        raise ValueError("resolution must be >= 2")
    n = resolution - 1
    rows = []
    for i in range(n + 1):
        for j in range(n + 1 - i):
            for k in range(n + 1 - i - j):
                q = np.array([n - i - j - k, i, j, k], dtype=float) / n
                rows.append((q[1], q[2], q[3], max_asymmetry_ratio_wcc_ea(q, 2)))
    return rows


def mover_fidelity(d, lam):
    """Constant pure-state fidelity ``(1 + (d-1) lam)/d`` of the DC."""
    d = _check_dimension(d)
    _check_dc_lambda(d, lam)
    return (1 + (d - 1) * lam) / d


def avg_output_fidelity(channel):
    """Haar-averaged input-output fidelity ``(sum_k |tr M_k|^2 + d)/(d(d+1))``."""
    require_channel(channel)
    d = channel.dim
    total = sum(abs(np.trace(m)) ** 2 for m in kraus_from_choi(channel))
    return float((total + d) / (d * (d + 1)))


def dc_as_wcc(d, lam):
    """The DC written as a WCC spec."""
    _check_dc_lambda(d, lam)
    return WCCSpec(d, np.clip(dc_weyl_distribution(d, lam), 0.0, None))


def mixer_wcc_spec(q_spec, lam):
    """WCC spec of ``lam Phi_q + (1-lam) D_0``; must lie in the CP interval."""
    p = mixer_weyl_distribution(q_spec.p, lam)
    if p.min() < -PARAM_TOL:
        raise CPViolationError(f"lambda={lam!r} outside the CP interval of the base channel")
    return WCCSpec(q_spec.d, np.clip(p, 0.0, None))
