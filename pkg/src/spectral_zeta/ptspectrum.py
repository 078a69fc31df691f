"""Complex-contour spectra by two-ray shooting.

The quantisation contour follows the two maximal-decay rays at
arguments -pi/2 +/- pi(K+1)/(2M+2).  Along either ray the rotated
potential coefficient is exactly 1, so the ray equation is
phi'' = (rho^{2M} - e^{2 i theta} E) phi in the radial coordinate rho;
solutions decay monomially-exponentially outward and are integrated
inward to the origin, where the contour Wronskian vanishes exactly at
the eigenvalues.  The characteristic function is real for real E, so
real-axis bracketing applies; complex refinement is kept as a fallback.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .errors import (
    BracketingFailure,
    DiscretizationError,
    DomainError,
    IntegrationFailure,
)
from .eigensolver import Spectrum, SpectrumLevel

__all__ = [
    "PTProblemSpec",
    "anti_stokes_angles",
    "pt_shoot",
    "pt_solve_spectrum",
    "pt_collocation_spectrum",
]

_ACTION_TARGET = 29.0


def anti_stokes_angles(M: float, K: int) -> tuple[float, float]:
    """Ray arguments (theta_left, theta_right) = -pi/2 -/+ pi(K+1)/(2M+2)."""
    if not M > 1.0:
        raise DomainError("anti_stokes_angles: requires M > 1")
    if K < 1:
        raise DomainError("anti_stokes_angles: requires K >= 1")
    half = math.pi * (K + 1) / (2.0 * M + 2.0)
    return -0.5 * math.pi - half, -0.5 * math.pi + half


@dataclass(frozen=True)
class PTProblemSpec:
    """Sector-K problem with potential (-1)^K (i x)^{2M} - alpha (i x)^{M-1} + (lambda^2-1/4)/x^2."""

    M: float
    K: int
    alpha: float = 0.0
    lam: float = 0.5

    def __post_init__(self):
        if not self.M > 1.0:
            raise DomainError("PTProblemSpec: requires M > 1")
        if self.K < 1:
            raise DomainError("PTProblemSpec: requires K >= 1")

    @property
    def ray_angles(self) -> tuple[float, float]:
        return anti_stokes_angles(self.M, self.K)

    @property
    def crosses_upper_half_plane(self) -> bool:
        """True when the right ray leaves the lower half plane (K >= M)."""
        return self.ray_angles[1] >= 0.0

    @property
    def directly_solvable(self) -> bool:
        """Two-ray shooting applies: contour through the origin, rays below the cut."""
        return (
            self.alpha == 0.0
            and abs(self.lam - 0.5) < 1e-12
            and not self.crosses_upper_half_plane
        )

    def require_direct(self) -> None:
        if not self.directly_solvable:
            raise DomainError(
                "PT problem not directly solvable (needs alpha=0, lambda=1/2, K < M); "
                "use the sector sum rules instead"
            )


def _ray_solution(
    problem: PTProblemSpec, theta: float, E: complex, local_tol: float
) -> tuple[complex, complex]:
    """(phi(0), dphi/drho(0)) for the decaying solution on the ray arg x = theta."""
    M = problem.M
    two_m = 2.0 * M
    # rotated potential coefficient exp(i(pi K + 2M(theta+pi/2) + 2 theta)); equals 1
    # on the maximal-decay rays but is kept general for perturbed angles
    c_pot = cmath.exp(1j * (math.pi * problem.K + two_m * (theta + 0.5 * math.pi) + 2.0 * theta))
    c_e = cmath.exp(2j * theta) * E
    rho_t = abs(E) ** (1.0 / two_m)
    rho_max = ((M + 1.0) * _ACTION_TARGET + rho_t ** (M + 1.0)) ** (1.0 / (M + 1.0))
    q = c_pot * rho_max**two_m - c_e
    rq = cmath.sqrt(q)
    if rq.real < 0.0:
        rq = -rq
    dq = c_pot * two_m * rho_max ** (two_m - 1.0)
    eta = -rq - dq / (4.0 * q)

    def rhs(rho, y):
        qq = c_pot * rho**two_m - c_e
        re_p, im_p, re_d, im_d = y
        acc = qq * complex(re_p, im_p)
        return (re_d, im_d, acc.real, acc.imag)

    sol = solve_ivp(
        rhs,
        (rho_max, 0.0),
        (1.0, 0.0, eta.real, eta.imag),
        method="DOP853",
        rtol=local_tol,
        atol=1e-300,
        first_step=rho_max / 2000.0,
    )
    if not sol.success:
        raise IntegrationFailure(f"ray integration failed: {sol.message}")
    y = sol.y[:, -1]
    return complex(y[0], y[1]), complex(y[2], y[3])


def pt_shoot(
    problem: PTProblemSpec,
    E: complex,
    local_tol: float = 1e-11,
    normalised: bool = True,
) -> complex:
    """Contour Wronskian of the two ray solutions at the origin.

    Zero exactly at the sector eigenvalues.  For real E the value is
    real up to integration error (real characteristic function), and it
    satisfies pt_shoot(conj(E)) = conj(pt_shoot(E)).
    """
    problem.require_direct()
    th_l, th_r = problem.ray_angles
    pl, dl = _ray_solution(problem, th_l, complex(E), local_tol)
    pr, dr = _ray_solution(problem, th_r, complex(E), local_tol)
    t1 = pl * cmath.exp(-1j * th_r) * dr
    t2 = cmath.exp(-1j * th_l) * dl * pr
    w = t1 - t2
    if not normalised:
        return w
    return w / (abs(t1) + abs(t2) + 1e-300)


def pt_solve_spectrum(
    problem: PTProblemSpec,
    count: int,
    tol: float = 1e-9,
    local_tol: float = 1e-11,
    scan_tol: float = 1e-8,
    allow_partial: bool = False,
) -> Spectrum:
    """First `count` sector eigenvalues by real-axis bracketing.

    Levels are searched sequentially with a growth-law predictor fitted
    to the solved levels; a complex secant fallback handles conjugate
    pairs if a real bracket cannot be found in a predicted window.

    The eigenvalue signal of two-ray shooting decays like
    exp(-2 S(E)) with S the modulus of the turning-point action, so in
    double precision only the first O(10) levels are resolvable.  With
    allow_partial=True the solver returns the levels it could certify
    instead of raising when that floor is reached.
    """
    problem.require_direct()
    if count < 0:
        raise DomainError("pt_solve_spectrum: count must be non-negative")
    if count == 0:
        return Spectrum(problem, tuple(), "pt-shooting")
    p = 2.0 * problem.M / (problem.M + 1.0)
    levels: list[SpectrumLevel] = []
    amp, delta = None, 0.5

    def predict(k: int) -> float:
        if amp is None:
            return (1.2 * (k + 0.6)) ** p
        return amp * (k + delta) ** p

    def g(E: float) -> float:
        return pt_shoot(problem, E, scan_tol).real

    e_prev = 0.0
    for k in range(count):
        target = predict(k)
        gap = target - e_prev if k > 0 else target
        lo = e_prev + max(1e-8 * max(1.0, e_prev), 0.04 * gap) if k > 0 else max(
            0.05, 0.2 * target
        )
        f_lo = g(lo)
        hi, f_hi = None, None
        step = 0.25 * max(gap, 0.1)
        e_cur, f_cur = lo, f_lo
        f_peak = abs(f_lo)
        for _ in range(260):
            e_next = e_cur + step
            f_next = g(e_next)
            f_peak = max(f_peak, abs(f_next))
            if f_cur * f_next < 0.0:
                lo, f_lo, hi, f_hi = e_cur, f_cur, e_next, f_next
                break
            e_cur, f_cur = e_next, f_next
            step *= 1.2
            if e_next > e_prev + 25.0 * max(gap, 1.0):
                break
        if f_peak < 1e-10:
            if allow_partial and k >= 4:
                return Spectrum(problem, tuple(levels), "pt-shooting")
            raise BracketingFailure(
                f"pt level {k}: characteristic signal {f_peak:.1e} is below the "
                "double-precision floor of two-ray shooting; solve fewer levels "
                "or pass allow_partial=True"
            )
        if hi is None:
            # complex fallback: secant iteration from a complex seed pair
            e0 = complex(target, 0.3 * max(gap, 1.0))
            root = _complex_secant(problem, e0, local_tol)
            if root is None:
                raise BracketingFailure(f"pt level {k}: no real bracket and no complex root")
            levels.append(SpectrumLevel(k=k, energy=root, err=1e-8 * max(1.0, abs(root))))
            e_prev = abs(root)
            continue
        for _ in range(10):
            mid = 0.5 * (lo + hi)
            fm = g(mid)
            if f_lo * fm <= 0.0:
                hi, f_hi = mid, fm
            else:
                lo, f_lo = mid, fm
        a, b = lo, hi
        fa = pt_shoot(problem, a, local_tol).real
        fb = pt_shoot(problem, b, local_tol).real
        delta_e = b - a
        for _ in range(40):
            if fb == fa:
                break
            c = b - fb * (b - a) / (fb - fa)
            if not (lo - delta_e <= c <= hi + delta_e):
                c = 0.5 * (a + b)
            fc = pt_shoot(problem, c, local_tol).real
            a, fa, b, fb = b, fb, c, fc
            delta_e = abs(b - a)
            if delta_e < tol * max(1.0, abs(b)):
                break
        energy = b
        err = max(delta_e, 1e-10 * max(1.0, abs(energy)))
        levels.append(SpectrumLevel(k=k, energy=energy, err=err))
        e_prev = energy
        if k >= 3:
            i0 = max(0, k - 7)
            ks = np.arange(i0, k + 1) + delta
            es = np.array([abs(levels[i].energy) for i in range(i0, k + 1)])
            amp = float(np.exp(np.mean(np.log(es) - p * np.log(ks))))
    return Spectrum(problem, tuple(levels), "pt-shooting")


def pt_collocation_spectrum(
    problem: PTProblemSpec,
    count: int,
    basis_size: int | None = None,
) -> Spectrum:
    """Sector spectrum from two-domain collocation on the bent contour.

    Each ray carries a Chebyshev grid in the radial coordinate; the two
    solutions are joined at the origin by continuity of the wavefunction
    and of its derivative along the contour (the potential is analytic
    at the origin for lambda = 1/2).  The eigenvalue signal here is not
    exponentially suppressed, unlike two-ray shooting, so this route
    reaches level counts the ray Wronskian cannot resolve in double
    precision.  Levels are accepted only when two grid resolutions agree.
    """
    problem.require_direct()
    if count < 1:
        raise DomainError("pt_collocation_spectrum: count must be positive")
    if basis_size is None:
        basis_size = max(8 * count + 120, 300)
    if basis_size < 4 * count:
        raise DomainError("pt_collocation_spectrum: basis_size must be at least 4*count")
    p = 2.0 * problem.M / (problem.M + 1.0)
    e_top = (1.6 * (count + 6.0)) ** p
    L = 1.30 * e_top ** (1.0 / (2.0 * problem.M)) + 2.5
    coarse = _pt_colloc_eigs(problem, int(0.85 * basis_size), L)
    fine = _pt_colloc_eigs(problem, basis_size, L)
    # keep only values reproduced at both resolutions (spurious-mode filter)
    confirmed: list[tuple[float, float]] = []
    for e in fine:
        if len(coarse) == 0:
            break
        drift = float(np.min(np.abs(coarse - e)))
        if drift <= 1e-5 * (1.0 + abs(e)):
            confirmed.append((float(e), drift))
    if len(confirmed) < count:
        raise DiscretizationError(
            f"pt_collocation_spectrum: only {len(confirmed)} converged levels "
            f"(need {count}); increase basis_size"
        )
    levels = []
    for k in range(count):
        e, drift = confirmed[k]
        err = max(drift, 1e-11 * (1.0 + abs(e)))
        levels.append(SpectrumLevel(k=k, energy=e, err=err))
    return Spectrum(problem, tuple(levels), "pt-shooting")


def _pt_colloc_eigs(problem: PTProblemSpec, n: int, L: float) -> np.ndarray:
    from scipy.linalg import eig as dense_geig

    from .eigensolver import _cheb_diff

    M = problem.M
    th_l, th_r = problem.ray_angles
    t, D = _cheb_diff(n)
    rho = L * (1.0 - t) / 2.0
    Dr = D * (-2.0 / L)
    D2 = Dr @ Dr
    order = np.argsort(rho)
    rho = rho[order]
    Dr = Dr[np.ix_(order, order)]
    D2 = D2[np.ix_(order, order)]
    m = n + 1
    A = np.zeros((2 * m, 2 * m), complex)
    B = np.zeros((2 * m, 2 * m), complex)
    for blk, th in ((0, th_l), (1, th_r)):
        phase = cmath.exp(1j * (math.pi * problem.K + 2.0 * M * (th + 0.5 * math.pi)))
        V = phase * rho.astype(complex) ** (2.0 * M)
        sl = slice(blk * m, (blk + 1) * m)
        A[sl, sl] = -cmath.exp(-2j * th) * D2 + np.diag(V)
        B[sl, sl] = np.eye(m)
    for i in (0, n, m, m + n):
        A[i, :] = 0.0
        B[i, :] = 0.0
    A[n, n] = 1.0
    A[m + n, m + n] = 1.0
    A[0, 0] = 1.0
    A[0, m] = -1.0
    A[m, 0:m] = cmath.exp(-1j * th_l) * Dr[0, :]
    A[m, m : 2 * m] = -cmath.exp(-1j * th_r) * Dr[0, :]
    vals = dense_geig(A, B, right=False)
    vals = vals[np.isfinite(vals)]
    vals = vals[(np.abs(vals.imag) < 1e-6 * (np.abs(vals.real) + 1.0)) & (vals.real > 0.0)]
    return np.sort(vals.real)


def _complex_secant(
    problem: PTProblemSpec, seed: complex, local_tol: float, iters: int = 40
) -> complex | None:
    z0, z1 = seed, seed * (1.0 + 1e-3) + 1e-3j
    f0 = pt_shoot(problem, z0, local_tol)
    f1 = pt_shoot(problem, z1, local_tol)
    for _ in range(iters):
        if f1 == f0:
            return None
        z2 = z1 - f1 * (z1 - z0) / (f1 - f0)
        f2 = pt_shoot(problem, z2, local_tol)
        z0, f0, z1, f1 = z1, f1, z2, f2
        if abs(z1 - z0) < 1e-10 * max(1.0, abs(z1)):
            return z1
    return None
