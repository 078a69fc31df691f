"""Closed-form zeta values and trigonometric sum-rule coefficients.

All Gamma-ratio prefactors are assembled in log space with sign
tracking, so parameter regions with large or negative Gamma arguments
evaluate without overflow.  Branch conventions: the regular problem
carries boundary exponent 1/2 + lambda, the irregular one 1/2 - lambda,
and irregular-branch values are the regular-branch values continued
through lambda -> -lambda.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

from .errors import DomainError, ExcludedLambda, SingularCoefficient
from .specfun import HypergeomSpec, cospi, loggamma_signed, pfq_unit, sinpi

__all__ = [
    "Branch",
    "ProblemSpec",
    "ZetaValue",
    "sigma_of",
    "lambda_is_excluded",
    "check_lambda_admissible",
    "n_coeff",
    "l_coeff",
    "z1_anharmonic",
    "z1_zero_alpha",
    "z1_general_alpha",
    "z2_zero_alpha",
    "z2_plus_simplified",
    "z_full_2_simplified",
    "z_skew_2_simplified",
    "zk2_simplified",
]

_EXCLUSION_TOL = 1e-9
_EXCLUSION_M_CAP = 1000


class Branch(Enum):
    """Boundary branch at the origin: MINUS is regular, PLUS irregular."""

    MINUS = "-"
    PLUS = "+"


def sigma_of(M: float) -> float:
    """Growth-exponent parameter sigma = 1/(M+1), requires M > 1."""
    if not M > 1.0:
        raise DomainError(f"sigma_of: requires M > 1, got {M!r}")
    return 1.0 / (M + 1.0)


def lambda_is_excluded(
    lam: float,
    M: float,
    alpha: float = 0.0,
    tol: float = _EXCLUSION_TOL,
    m_cap: int = _EXCLUSION_M_CAP,
) -> bool:
    """True when lambda sits on the excluded set.

    Family 1 (zero-energy level): |lambda| = ((2 m1 + 1)(M+1) + alpha)/2.
    Family 2 (boundary-solution degeneracy): |lambda| = m2 + m3 (M+1)/2
    with integer m2, m3 >= 0; for alpha = 0 half-integer m3 also counts.
    The search is capped at m <= m_cap, ample for desk-scale parameters.
    """
    a = abs(lam)
    step = (M + 1.0) / 2.0
    m1_max = min(m_cap, int((2.0 * a / (M + 1.0)) + 2))
    for m1 in range(m1_max + 1):
        if abs(a - 0.5 * ((2 * m1 + 1) * (M + 1.0) + alpha)) < tol:
            return True
        if abs(a - 0.5 * abs((2 * m1 + 1) * (M + 1.0) - alpha)) < tol:
            return True
    half_steps = alpha == 0.0
    m3_unit = 0.5 if half_steps else 1.0
    m3_max = min(2 * m_cap, int(a / (m3_unit * step)) + 2)
    for j in range(m3_max + 1):
        r = a - j * m3_unit * step
        if r < -tol:
            break
        if abs(r - round(r)) < tol and round(r) >= 0:
            return True
    return False


def check_lambda_admissible(lam: float, M: float, alpha: float = 0.0) -> None:
    if lambda_is_excluded(lam, M, alpha):
        raise ExcludedLambda(
            f"lambda = {lam!r} is on the excluded set for M = {M!r}, alpha = {alpha!r}"
        )


@dataclass(frozen=True)
class ProblemSpec:
    """Radial problem parameters: potential x^{2M} + alpha x^{M-1} + (lambda^2 - 1/4)/x^2."""

    M: float
    alpha: float = 0.0
    lam: float = 0.5
    branch: Branch = Branch.MINUS

    def __post_init__(self):
        if not self.M > 1.0:
            raise DomainError(f"ProblemSpec: requires M > 1, got {self.M!r}")
        check_lambda_admissible(self.lam, self.M, self.alpha)

    @property
    def sigma(self) -> float:
        return sigma_of(self.M)

    @property
    def effective_lambda(self) -> float:
        """Signed lambda selecting the boundary exponent 1/2 + lambda_eff."""
        return self.lam if self.branch is Branch.MINUS else -self.lam

    def potential(self, x: float) -> float:
        c = self.lam * self.lam - 0.25
        return x ** (2.0 * self.M) + self.alpha * x ** (self.M - 1.0) + c / (x * x)

    def swapped(self) -> "ProblemSpec":
        other = Branch.PLUS if self.branch is Branch.MINUS else Branch.MINUS
        return ProblemSpec(self.M, self.alpha, self.lam, other)


@dataclass(frozen=True)
class ZetaValue:
    """A zeta evaluation at integer order with an error estimate."""

    order: int
    value: float
    err: float
    method: str  # "closed-form" | "eig-sum" | "sum-rule"

    def __post_init__(self):
        if self.order < 1:
            raise DomainError("ZetaValue: order must be a positive integer")
        if not self.err >= 0.0:
            raise DomainError("ZetaValue: err must be non-negative")
        if not math.isfinite(self.value):
            raise DomainError("ZetaValue: value must be finite")


def _gamma_ratio(num: list[float], den: list[float]) -> float:
    """prod Gamma(num) / prod Gamma(den), computed in log space with signs."""
    log_acc = 0.0
    sign = 1.0
    for x in num:
        lg, s = loggamma_signed(x)
        log_acc += lg
        sign *= s
    for x in den:
        lg, s = loggamma_signed(x)
        log_acc -= lg
        sign *= s
    return sign * math.exp(log_acc)


def n_coeff(a: int, sigma: float, lam: float) -> float:
    """Radial rule coefficient sin(pi sigma (lambda + a)) / sin(pi sigma lambda)."""
    den = sinpi(sigma * lam)
    if abs(den) < 1e-14:
        raise SingularCoefficient(f"n_coeff: sin(pi sigma lambda) = 0 at sigma*lam = {sigma*lam!r}")
    return sinpi(sigma * (lam + a)) / den


def l_coeff(a: int, sigma: float, lam: float, K: int) -> float:
    """Fused coefficient sin(pi sigma (K+1)(lambda+a)) / sin(pi sigma (K+1) lambda).

    K = 0 degenerates to n_coeff.
    """
    if K < 0:
        raise DomainError("l_coeff: K must be a non-negative integer")
    kp = (K + 1.0) * sigma
    den = sinpi(kp * lam)
    if abs(den) < 1e-14:
        raise SingularCoefficient(f"l_coeff: sin(pi sigma (K+1) lambda) = 0 for K = {K}")
    return sinpi(kp * (lam + a)) / den


def _zeta(order: int, value: float, err: float) -> ZetaValue:
    return ZetaValue(order=order, value=value, err=err, method="closed-form")


def z1_anharmonic(M: float, branch: Branch) -> ZetaValue:
    """First zeta value in the compact single-ratio anharmonic normalisation.

    Note: at lambda = 1/2 this expression is exactly 4x z1_zero_alpha;
    eigenvalue sums of the half-line Dirichlet/Neumann problems match
    z1_zero_alpha, not this form (see README, normalisation note).
    """
    s = sigma_of(M)
    up = 0.5 if branch is Branch.MINUS else -0.5
    val = (
        s ** (2.0 - 2.0 * s)
        / math.sqrt(math.pi)
        * _gamma_ratio([s * (1.0 + up), s, 0.5 - s], [1.0 - s * (1.0 - up)])
    )
    return _zeta(1, val, 1e-14 * abs(val))


def z1_zero_alpha(sigma: float, lam: float) -> ZetaValue:
    """Z_-(1) at alpha = 0; the irregular branch is the value at -lambda."""
    if not 0.0 < sigma < 0.5:
        raise DomainError(f"z1_zero_alpha: sigma must lie in (0, 1/2), got {sigma!r}")
    val = (
        sigma ** (2.0 - 2.0 * sigma)
        / (4.0 * math.sqrt(math.pi))
        * _gamma_ratio(
            [sigma * (1.0 + lam), sigma, 0.5 - sigma],
            [1.0 - sigma * (1.0 - lam)],
        )
    )
    return _zeta(1, val, 1e-14 * abs(val))


def z1_general_alpha(sigma: float, lam: float, alpha: float, tol: float = 1e-12) -> ZetaValue:
    """Z_-(1) for general alpha: Gamma prefactor times a 3F2 at unit argument."""
    if not 0.0 < sigma < 0.5:
        raise DomainError(f"z1_general_alpha: sigma must lie in (0, 1/2), got {sigma!r}")
    check_lambda_admissible(lam, 1.0 / sigma - 1.0, alpha)
    ha = 0.5 * sigma * alpha
    spec = HypergeomSpec(
        [0.5 + ha + sigma * lam, 2.0 * sigma * (1.0 + lam), 2.0 * sigma],
        [1.0 + 2.0 * sigma * lam, 0.5 + ha + sigma * (2.0 + lam)],
    )
    series, serr = pfq_unit(spec, tol=tol)
    pref = (
        sigma ** (2.0 - 2.0 * sigma)
        / 4.0**sigma
        * _gamma_ratio(
            [0.5 + ha + sigma * lam, 2.0 * sigma * (1.0 + lam), 2.0 * sigma],
            [1.0 + 2.0 * sigma * lam, 0.5 + ha + sigma * (2.0 + lam)],
        )
    )
    val = pref * series
    err = abs(pref) * serr + 1e-14 * abs(val)
    return _zeta(1, val, err)


def z2_series(sigma: float, lam: float, tol: float = 1e-12) -> tuple[float, float]:
    """The 5F4 factor of the second zeta value (value, err)."""
    spec = HypergeomSpec(
        [
            0.5 + sigma * lam,
            2.0 * sigma * (1.0 + lam),
            sigma * (2.0 + lam),
            2.0 * sigma,
            sigma * (1.0 + lam),
        ],
        [
            1.0 + sigma * lam,
            1.0 + 2.0 * sigma * lam,
            0.5 + sigma * (2.0 + lam),
            1.0 + sigma * (1.0 + lam),
        ],
    )
    return pfq_unit(spec, tol=tol)


def z2_zero_alpha(sigma: float, lam: float, tol: float = 1e-12) -> ZetaValue:
    """Z_-(2) at alpha = 0: Gamma prefactor times a 5F4 at unit argument."""
    if not 0.0 < sigma < 0.5:
        raise DomainError(f"z2_zero_alpha: sigma must lie in (0, 1/2), got {sigma!r}")
    if abs(1.0 + lam) < 1e-14:
        raise SingularCoefficient("z2_zero_alpha: prefactor pole at lambda = -1")
    series, serr = z2_series(sigma, lam, tol=tol)
    pref = (
        math.sqrt(math.pi)
        * sigma ** (3.0 - 4.0 * sigma)
        / (4.0 ** (1.0 + sigma * lam) * (1.0 + lam))
        * _gamma_ratio(
            [2.0 * sigma * (1.0 + lam), sigma * (2.0 + lam), 2.0 * sigma],
            [1.0 + sigma * lam, 1.0 + sigma * lam, 0.5 + sigma * (2.0 + lam)],
        )
    )
    val = pref * series
    err = abs(pref) * serr + 1e-14 * abs(val)
    return _zeta(2, val, err)


def z2_plus_simplified(sigma: float, m: int) -> ZetaValue:
    """Z_+(2) on the locus sigma (lambda + 2) = m, as a Gamma/trig product."""
    if m < 1:
        raise DomainError("z2_plus_simplified: m must be a positive integer")
    s4 = sinpi(4.0 * sigma)
    s3 = sinpi(3.0 * sigma)
    if abs(s4) < 1e-14 or abs(s3) < 1e-14:
        raise SingularCoefficient("z2_plus_simplified: trigonometric pole")
    s2 = sinpi(2.0 * sigma)
    val = -(
        sigma ** (4.0 - 4.0 * sigma)
        * _gamma_ratio(
            [sigma] * 4 + [1.0 - 2.0 * sigma] * 2,
            [1.0 - 3.0 * sigma + m] * 2 + [1.0 + sigma - m] * 2,
        )
        * s2**3
        / (s3 * s3 * s4 * 2.0 ** (4.0 - 4.0 * sigma))
    )
    return _zeta(2, val, 1e-13 * abs(val))


def z_full_2_simplified(sigma: float, lam: float, m: int) -> ZetaValue:
    """Full combination Z(2) = Z_+(2) + Z_-(2) on the locus sigma = (2m-1)/(2 lambda)."""
    if m < 1:
        raise DomainError("z_full_2_simplified: m must be a positive integer")
    if abs(sigma * lam * 2.0 - (2 * m - 1)) > 1e-9:
        raise DomainError("z_full_2_simplified: requires sigma = (2m-1)/(2 lambda)")
    c1 = cospi(sigma)
    c2 = cospi(2.0 * sigma)
    if abs(c1) < 1e-14 or abs(c2) < 1e-14:
        raise SingularCoefficient("z_full_2_simplified: secant pole")
    val = -(
        math.pi**4
        * sigma ** (4.0 - 4.0 * sigma)
        * _gamma_ratio(
            [1.0 - 2.0 * sigma] * 2,
            [1.0 - sigma] * 4 + [1.5 - sigma - m] * 2 + [0.5 - sigma + m] * 2,
        )
        / (4.0 ** (1.0 - 2.0 * sigma) * c1 * c1 * c2)
    )
    return _zeta(2, val, 1e-13 * abs(val))


def z_skew_2_simplified(lam: float) -> ZetaValue:
    """Skew combination Z~(2) = Z_+(2) - Z_-(2) at sigma = 1/4."""
    c = cospi(lam / 2.0)
    if abs(c) < 1e-14 or abs(lam) < 1e-14:
        raise SingularCoefficient("z_skew_2_simplified: trigonometric pole")
    t = sinpi(lam / 4.0) / cospi(lam / 4.0)
    val = (
        math.pi**5
        * t
        / (64.0 * c * c)
        * _gamma_ratio([], [0.75] * 4 + [(3.0 + lam) / 4.0] * 2 + [(3.0 - lam) / 4.0] * 2)
    )
    return _zeta(2, val, 1e-13 * abs(val))


def zk2_simplified(sigma: float, m: int, K: int) -> ZetaValue:
    """Sector zeta value Z_K(2) on the locus lambda = m/sigma - 2, alpha = 0."""
    if m < 1 or K < 1:
        raise DomainError("zk2_simplified: m and K must be positive integers")
    kp = (K + 1.0) * sigma
    s_k = sinpi(kp)
    s_2k = sinpi(2.0 * kp)
    s_1 = sinpi(sigma)
    s_2 = sinpi(2.0 * sigma)
    s_3 = sinpi(3.0 * sigma)
    c_2 = cospi(2.0 * sigma)
    if min(abs(s_k), abs(s_2k), abs(s_1), abs(s_2), abs(s_3), abs(c_2)) < 1e-14:
        raise SingularCoefficient("zk2_simplified: trigonometric pole")
    if abs(1.0 + 2.0 * c_2) < 1e-14:
        raise SingularCoefficient("zk2_simplified: resonant denominator 1 + 2 cos(2 pi sigma)")
    pref = (
        math.pi**4
        * sigma ** (4.0 - 4.0 * sigma)
        * _gamma_ratio(
            [1.0 - 2.0 * sigma] * 2,
            [1.0 + sigma - m] * 2 + [1.0 - 3.0 * sigma + m] * 2 + [1.0 - sigma] * 4,
        )
        / (16.0 ** (1.0 - sigma) * s_1 * s_1)
    )
    term1 = (1.0 / s_3 + 1.0 / s_1) ** 2 * s_k * s_k / (s_2k * s_2k)
    term2 = sinpi(4.0 * kp) * (1.0 + 1.0 / c_2) / ((1.0 + 2.0 * c_2) ** 2 * s_1 * s_1 * s_2k)
    val = pref * (term1 - term2)
    return _zeta(2, val, 1e-12 * abs(val))
