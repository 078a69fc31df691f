"""Vacuum nonlocal integrals of motion from sector zeta values.

The transfer-matrix vacuum eigenvalue is a function of the K=1 sector
determinant under a quadratic change of variable; its even Taylor
coefficients are the nonlocal charges computed here, either from sector
zeta values or, for the first charge, from a closed Gamma product and a
directly integrated double integral that serves as the module's oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, QuadratureFailure, SingularCoefficient
from .specfun import cospi, gamma, loggamma_signed, sinpi
from .sumrules import SumRuleReport

__all__ = [
    "IMParams",
    "map_params",
    "g1_closed",
    "g_from_zetas",
    "g2_explicit",
    "g1_integral_oracle",
    "t_series_check",
]


@dataclass(frozen=True)
class IMParams:
    """Field-theory parameters (beta2, p, nu) tied to (sigma, lambda)."""

    beta2: float
    p: float
    nu: float

    def __post_init__(self):
        if not 0.0 < self.beta2 < 0.5:
            raise DomainError(f"IMParams: beta2 must lie in (0, 1/2), got {self.beta2!r}")


def map_params(sigma: float, lam: float) -> IMParams:
    """(sigma, lambda) -> (beta2, p, nu) with nu the quadratic rescaling."""
    if not 0.0 < sigma < 0.5:
        raise DomainError(f"map_params: sigma must lie in (0, 1/2), got {sigma!r}")
    nu = (sigma / 2.0) ** (2.0 * sigma - 2.0) * gamma(1.0 - sigma) ** 2
    return IMParams(beta2=sigma, p=0.5 * sigma * lam, nu=nu)


def g1_closed(params: IMParams) -> float:
    """First nonlocal charge as a Gamma product."""
    b2, p = params.beta2, params.p
    lg, sign = loggamma_signed(1.0 - 2.0 * b2)
    lg1, s1 = loggamma_signed(1.0 - b2 - 2.0 * p)
    lg2, s2 = loggamma_signed(1.0 - b2 + 2.0 * p)
    return 4.0 * math.pi**2 * sign * s1 * s2 * math.exp(lg - lg1 - lg2)


def _nu_pow(sigma: float, n: int) -> float:
    return ((sigma / 2.0) ** (2.0 * sigma - 2.0) * gamma(1.0 - sigma) ** 2) ** n


def g_from_zetas(n: int, z1_values, sigma: float, lam: float) -> float:
    """Charge of order n (1..3) from sector zeta values of orders <= n.

    Exponential-expansion coefficients of the sector determinant under
    the quadratic variable change; the n=3 prefactor follows from that
    expansion (pattern (1/n!) nu^n brackets).
    """
    if n not in (1, 2, 3):
        raise DomainError("g_from_zetas: n must be 1, 2 or 3")
    if len(z1_values) < n:
        raise DomainError("g_from_zetas: need sector zeta values through order n")
    c = cospi(sigma * lam)
    z = list(z1_values)
    if n == 1:
        return 2.0 * _nu_pow(sigma, 1) * c * z[0]
    if n == 2:
        return _nu_pow(sigma, 2) * c * (z[0] ** 2 - z[1])
    return (
        (1.0 / 3.0)
        * _nu_pow(sigma, 3)
        * c
        * (z[0] ** 3 + 2.0 * z[2] - 3.0 * z[1] * z[0])
    )


def g2_explicit(sigma: float, lam: float, z2_minus: float, z2_plus: float) -> float:
    """Second charge as the trig/Gamma block plus the second-zeta block."""
    s2l = sinpi(2.0 * sigma * lam)
    cl = cospi(sigma * lam)
    if abs(s2l) < 1e-14 or abs(cl) < 1e-14:
        raise SingularCoefficient("g2_explicit: trigonometric pole")
    sm = sinpi(sigma * (1.0 - lam))
    sp = sinpi(sigma * (1.0 + lam))
    if abs(sm) < 1e-14 or abs(sp) < 1e-14:
        raise SingularCoefficient("g2_explicit: sine pole in the closed block")
    lg, sg = loggamma_signed(1.0 - 2.0 * sigma)
    lgm, sgm = loggamma_signed(1.0 - sigma * (1.0 - lam))
    lgp, sgp = loggamma_signed(1.0 - sigma * (1.0 + lam))
    block1 = (
        4.0
        * math.pi**4
        * sg * sg * sgm * sgm * sgp * sgp
        * math.exp(2.0 * lg - 2.0 * lgm - 2.0 * lgp)
        / cl
        * (1.0 - cospi(sigma) ** 4 / (sm * sm * sp * sp))
    )
    block2 = (
        _nu_pow(sigma, 2)
        * cl
        * (
            sinpi(2.0 * sigma * (2.0 - lam)) / s2l * z2_plus
            - sinpi(2.0 * sigma * (2.0 + lam)) / s2l * z2_minus
        )
    )
    return block1 + block2


def g1_integral_oracle(params: IMParams, tol: float = 1e-6) -> float:
    """First charge from its double integral, reduced to one dimension.

    With w the separation of the two angles, the outer integration is
    exact and leaves (2 pi - w) cos(2 p (pi - w)) [2 sin(w/2)]^{-2 beta2}
    on (0, 2 pi).  The kernel vanishes linearly at both endpoints, so the
    algebraic singularities w^{-2 beta2} and (2 pi - w)^{-2 beta2} are
    pulled into an exact endpoint-weighted quadrature rule.
    """
    from scipy.integrate import quad

    b2, p = params.beta2, params.p
    if not b2 < 0.5:
        raise DomainError("g1_integral_oracle: needs beta2 < 1/2 for integrability")
    two_pi = 2.0 * math.pi

    def smooth(w: float) -> float:
        # [2 sin(w/2)]^{-2 b2} * [w (2 pi - w) / (2 pi)]^{+2 b2}, regular part
        if w <= 0.0 or w >= two_pi:
            return 1.0
        phi = 2.0 * math.sin(0.5 * w) * two_pi / (w * (two_pi - w))
        return phi ** (-2.0 * b2)

    def f(w: float) -> float:
        return (
            2.0
            * (two_pi) ** (2.0 * b2)
            * (two_pi - w)
            * math.cos(2.0 * p * (math.pi - w))
            * smooth(w)
        )

    val, err = quad(
        f,
        0.0,
        two_pi,
        weight="alg",
        wvar=(-2.0 * b2, -2.0 * b2),
        epsabs=tol * 0.1,
        epsrel=tol * 0.1,
        limit=400,
    )
    if not math.isfinite(val) or err > tol * max(1.0, abs(val)) * 10.0:
        raise QuadratureFailure(
            f"g1_integral_oracle: quadrature error {err:.3g} above tolerance {tol:g}"
        )
    return val


def t_series_check(
    sigma: float,
    lam: float,
    z1_values,
    s_value: float,
    tolerance: float = 1e-7,
) -> SumRuleReport:
    """Truncated charge expansion against the sector determinant.

    Both sides are built from the same sector zeta values (orders 1..3):
    the left side is T(0) plus the first three even Taylor terms, the
    right side the exponential form evaluated at the rotated argument.
    Their difference is the order-8 truncation remainder.
    """
    if len(z1_values) < 3:
        raise DomainError("t_series_check: need sector zeta values through order 3")
    nu = map_params(sigma, lam).nu
    t0 = 2.0 * cospi(sigma * lam)
    lhs = t0
    for n in (1, 2, 3):
        lhs += g_from_zetas(n, z1_values, sigma, lam) * s_value ** (2 * n)
    arg = -nu * s_value**2  # the determinant's reflected argument
    expo = -sum(z1_values[n - 1] / n * arg**n for n in (1, 2, 3))
    rhs = t0 * math.exp(expo)
    return SumRuleReport.from_pair(f"t-series s={s_value:g}", lhs, rhs, tolerance)
