"""Shooting solver for the radial spectra, with a collocation oracle.

Shooting integrates outward from a Frobenius series start near the
origin and inward from WKB-decay data beyond the outer turning point;
the Wronskian mismatch at the matching point changes sign across every
eigenvalue.  The collocation oracle discretises the regularised
equation (boundary exponent divided out) on Chebyshev points and solves
the dense generalised eigenproblem; it shares no code with shooting.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import solve_ivp
from scipy.linalg import eig as dense_eig

from .closedform import Branch, ProblemSpec
from .errors import (
    BracketingFailure,
    DiscretizationError,
    DomainError,
    IntegrationFailure,
)

__all__ = [
    "SpectrumLevel",
    "Spectrum",
    "wkb_estimate",
    "shoot",
    "solve_spectrum",
    "collocation_spectrum",
]

_GAUSS_N = 48
_GAUSS_X, _GAUSS_W = np.polynomial.legendre.leggauss(_GAUSS_N)
_ACTION_TARGET = 29.0


@dataclass(frozen=True)
class SpectrumLevel:
    k: int
    energy: complex
    err: float


@dataclass(frozen=True)
class Spectrum:
    """Ordered eigenvalue list with per-level error estimates."""

    problem: object
    levels: tuple[SpectrumLevel, ...]
    method: str  # "shooting" | "collocation" | "pt-shooting"

    def __post_init__(self):
        for i, lev in enumerate(self.levels):
            if lev.k != i:
                raise DomainError("Spectrum: level indices must be contiguous from 0")
            if not lev.err > 0.0 and len(self.levels) > 0:
                raise DomainError("Spectrum: per-level err must be positive")
        if self.method != "pt-shooting":
            en = [lev.energy for lev in self.levels]
            if any(abs(complex(e).imag) > 0 for e in en):
                raise DomainError("Spectrum: radial energies must be real")
            vals = [complex(e).real for e in en]
            if any(b <= a for a, b in zip(vals, vals[1:])):
                raise DomainError("Spectrum: radial energies must increase strictly")

    @property
    def energies(self) -> np.ndarray:
        return np.array([lev.energy for lev in self.levels])

    @property
    def real_energies(self) -> np.ndarray:
        return np.array([complex(lev.energy).real for lev in self.levels])


def _langer_potential(problem: ProblemSpec) -> Callable[[float], float]:
    M, alpha, lam = problem.M, problem.alpha, abs(problem.lam)
    c = lam * lam

    def v(x: float) -> float:
        return x ** (2.0 * M) + alpha * x ** (M - 1.0) + c / (x * x)

    return v


def _turning_points(v: Callable[[float], float], E: float) -> tuple[float, float]:
    """Inner/outer roots of v(x) = E for the Langer potential (v convex-ish)."""
    # locate a point below E by sampling around the minimum
    xs = np.geomspace(1e-4, max(4.0, (abs(E) + 10.0) ** 0.75), 160)
    vals = np.array([v(x) for x in xs])
    below = np.where(vals < E)[0]
    if len(below) == 0:
        raise BracketingFailure("no classically allowed region at this energy")
    i0, i1 = below[0], below[-1]
    # inner root in (xs[i0-1], xs[i0]]
    if i0 == 0:
        x1 = xs[0]
    else:
        a, b = xs[i0 - 1], xs[i0]
        for _ in range(80):
            m = 0.5 * (a + b)
            if v(m) > E:
                a = m
            else:
                b = m
        x1 = 0.5 * (a + b)
    a, b = xs[i1], xs[i1 + 1] if i1 + 1 < len(xs) else xs[i1] * 2.0
    while v(b) < E:
        b *= 1.5
    for _ in range(80):
        m = 0.5 * (a + b)
        if v(m) < E:
            a = m
        else:
            b = m
    x2 = 0.5 * (a + b)
    return x1, x2


def _phase_integral(v: Callable[[float], float], E: float) -> float:
    """int sqrt(E - v) dx between the turning points (sin substitution)."""
    x1, x2 = _turning_points(v, E)
    mid, half = 0.5 * (x1 + x2), 0.5 * (x2 - x1)
    theta = 0.5 * math.pi * _GAUSS_X
    x = mid + half * np.sin(theta)
    q = np.clip(E - np.array([v(xx) for xx in x]), 0.0, None)
    w = 0.5 * math.pi * _GAUSS_W * np.cos(theta) * half
    return float(np.sum(w * np.sqrt(q)))


def wkb_estimate(problem: ProblemSpec, k: int, delta: float | None = None) -> float:
    """Phase-integral energy estimate for level k (bracketing aid only).

    The offset delta is a branch-dependent fit parameter; the default
    0.5 + lambda_eff/2 reproduces the anharmonic quantisation at
    lambda = 1/2 and is refined from solved levels by the driver.
    """
    if k < 0:
        raise DomainError("wkb_estimate: k must be non-negative")
    if delta is None:
        delta = 0.5 + 0.5 * problem.effective_lambda
    v = _langer_potential(problem)
    target = (k + delta) * math.pi
    lo, hi = 1e-3, 10.0
    while _phase_integral_safe(v, hi) < target:
        hi *= 2.0
        if hi > 1e12:
            raise BracketingFailure("wkb_estimate: failed to bracket the phase target")
    while _phase_integral_safe(v, lo) > target and lo > 1e-12:
        lo *= 0.5
    for _ in range(100):
        m = math.sqrt(lo * hi)
        if _phase_integral_safe(v, m) < target:
            lo = m
        else:
            hi = m
    return math.sqrt(lo * hi)


def _phase_integral_safe(v, E: float) -> float:
    try:
        return _phase_integral(v, E)
    except BracketingFailure:
        return 0.0


def _frobenius_start(problem: ProblemSpec, E: float, x0: float) -> tuple[float, float]:
    """(psi, psi') at x0 from the boundary-exponent power series.

    Exponent lattice e = 2a + (M+1)b relative to x^{1/2 + lambda_eff};
    the recurrence couples E (a-direction) and the two potential powers
    (b-direction).  Truncation is far below 1e-15 for E x0^2 <~ 2.
    """
    M, alpha = problem.M, problem.alpha
    le = problem.effective_lambda
    se = 0.5 + le
    A, B = 30, 10
    step_b = M + 1.0
    C = np.zeros((A + 1, B + 1))
    C[0, 0] = 1.0
    val = 1.0
    der = se  # accumulates sum C * (se+e) * x0^e
    x0_2 = x0 * x0
    x0_b = x0**step_b
    pow_a = np.power(x0_2, np.arange(A + 1))
    pow_b = np.power(x0_b, np.arange(B + 1))
    val = 0.0
    der = 0.0
    for a in range(A + 1):
        for b in range(B + 1):
            if a == 0 and b == 0:
                term = 1.0
            else:
                e = 2.0 * a + step_b * b
                d = e * (e + 2.0 * le)
                acc = 0.0
                if b >= 2:
                    acc += C[a, b - 2]
                if b >= 1:
                    acc += alpha * C[a, b - 1]
                if a >= 1:
                    acc -= E * C[a - 1, b]
                C[a, b] = acc / d
                term = C[a, b] * pow_a[a] * pow_b[b]
            val += term
            der += term * (se + 2.0 * a + step_b * b)
    psi = x0**se * val
    dpsi = x0 ** (se - 1.0) * der
    return psi, dpsi


def _action_radius(problem: ProblemSpec, E: float, x_t: float) -> float:
    """Radius where the decay action past the outer turning point hits the target."""
    v = problem.potential
    M = problem.M
    X = (( _ACTION_TARGET + 2.0) * (M + 1.0) + x_t ** (M + 1.0)) ** (1.0 / (M + 1.0))
    for _ in range(60):
        # endpoint-aware action integral on [x_t, X]
        theta = 0.5 * (np.asarray(_GAUSS_X) + 1.0)  # in (0,1)
        x = x_t + (X - x_t) * theta * theta  # quadratic clustering at x_t
        w = _GAUSS_W * 0.5 * (X - x_t) * 2.0 * theta
        q = np.array([max(v(xx) - E, 0.0) for xx in x])
        S = float(np.sum(w * np.sqrt(q)))
        if S >= _ACTION_TARGET:
            return X
        X *= 1.3
    raise BracketingFailure("action radius search failed")


def shoot(
    problem: ProblemSpec,
    E: float,
    local_tol: float = 1e-11,
    x_match: float | None = None,
    return_nodes: bool = False,
):
    """Normalised Wronskian mismatch of the outward and inward solutions.

    Zero iff E is an eigenvalue; sign changes bracket eigenvalues.  With
    return_nodes=True also counts interior sign changes of the glued
    wavefunction (Sturm index).
    """
    v = problem.potential
    le = problem.effective_lambda
    if 0.5 + le < -0.5:
        raise DomainError("shoot: boundary exponent below the square-integrable range")
    # matching point near the outer turning point
    if x_match is None:
        try:
            _, x_t = _turning_points(_langer_potential(problem), max(E, 1e-6))
        except BracketingFailure:
            x_t = max(1.0, abs(E) ** (1.0 / (2.0 * problem.M)))
        x_match = x_t
    x0 = min(0.3, 2.0 / math.sqrt(abs(E) + 4.0))
    psi0, dpsi0 = _frobenius_start(problem, E, x0)

    def rhs(x, y):
        return (y[1], (v(x) - E) * y[0])

    sol_out = solve_ivp(
        rhs,
        (x0, x_match),
        (psi0, dpsi0),
        method="DOP853",
        rtol=local_tol,
        atol=local_tol * max(abs(psi0), 1e-8),
        dense_output=return_nodes,
    )
    if not sol_out.success:
        raise IntegrationFailure(f"outward integration failed: {sol_out.message}")
    x_start = _action_radius(problem, E, x_match)
    q = v(x_start) - E
    if q <= 0.0:
        raise IntegrationFailure("inward start not in the forbidden region")
    h = 1e-5 * x_start
    dq = (v(x_start + h) - v(x_start - h)) / (2.0 * h)
    eta = -math.sqrt(q) - dq / (4.0 * q)
    sol_in = solve_ivp(
        rhs,
        (x_start, x_match),
        (1.0, eta),
        method="DOP853",
        rtol=local_tol,
        atol=1e-300,
        dense_output=return_nodes,
    )
    if not sol_in.success:
        raise IntegrationFailure(f"inward integration failed: {sol_in.message}")
    po, dpo = sol_out.y[0][-1], sol_out.y[1][-1]
    pi_, dpi_ = sol_in.y[0][-1], sol_in.y[1][-1]
    w = po * dpi_ - dpo * pi_
    scale = abs(po * dpi_) + abs(dpo * pi_) + 1e-300
    mismatch = w / scale
    if not return_nodes:
        return mismatch
    nodes = _count_sign_changes(sol_out, x0, x_match) + _count_sign_changes(
        sol_in, x_match, x_start
    )
    return mismatch, nodes


def _count_sign_changes(sol, a: float, b: float, samples: int = 1200) -> int:
    xs = np.linspace(min(a, b), max(a, b), samples)[1:-1]
    vals = sol.sol(xs)[0]
    signs = np.sign(vals)
    signs = signs[signs != 0]
    return int(np.sum(signs[1:] != signs[:-1]))


def solve_spectrum(
    problem: ProblemSpec,
    count: int,
    tol: float = 1e-10,
    local_tol: float = 2e-12,
    scan_tol: float = 1e-8,
) -> Spectrum:
    """First `count` eigenvalues by bracketed shooting with node verification.

    Bracketing and bisection run at the coarse scan_tol; the secant
    polish and final residual/node check run at local_tol.
    """
    if count < 0:
        raise DomainError("solve_spectrum: count must be non-negative")
    if problem.branch is Branch.PLUS and problem.lam >= 1.0:
        raise DomainError(
            "solve_spectrum: irregular branch not square-integrable for lambda >= 1"
        )
    levels: list[SpectrumLevel] = []
    if count == 0:
        return Spectrum(problem, tuple(), "shooting")

    delta = 0.5 + 0.5 * problem.effective_lambda
    p = 2.0 * problem.M / (problem.M + 1.0)
    amp = None

    def predict(k: int) -> float:
        if amp is not None:
            return amp * (k + delta) ** p
        return wkb_estimate(problem, k, delta)

    e_prev = 0.0
    for k in range(count):
        target = predict(k)
        gap = target - e_prev if k > 0 else target
        lo = e_prev + max(1e-9 * max(1.0, e_prev), 0.05 * gap) if k > 0 else max(
            1e-3, 0.25 * target
        )
        f_lo = shoot(problem, lo, scan_tol)
        hi = None
        step = 0.30 * max(gap, 0.05 * max(target, 1.0))
        e_cur = lo
        f_cur = f_lo
        for _ in range(220):
            e_next = e_cur + step
            f_next = shoot(problem, e_next, scan_tol)
            if f_cur * f_next < 0.0:
                hi = e_next
                lo, f_lo = e_cur, f_cur
                break
            e_cur, f_cur = e_next, f_next
            step *= 1.25
        if hi is None:
            raise BracketingFailure(f"level {k}: no sign change found above {lo:.6g}")
        f_hi = shoot(problem, hi, scan_tol)
        # coarse bisection, then secant polish at tight tolerance
        for _ in range(10):
            mid = 0.5 * (lo + hi)
            fm = shoot(problem, mid, scan_tol)
            if f_lo * fm <= 0.0:
                hi, f_hi = mid, fm
            else:
                lo, f_lo = mid, fm
            if hi - lo < 1e-5 * max(1.0, abs(mid)):
                break
        a, b = lo, hi
        fa = shoot(problem, a, local_tol)
        fb = shoot(problem, b, local_tol)
        delta_e = b - a
        for _ in range(30):
            if fb == fa:
                break
            c = b - fb * (b - a) / (fb - fa)
            if not (lo - delta_e <= c <= hi + delta_e):
                c = 0.5 * (a + b)
            fc = shoot(problem, c, local_tol)
            a, fa, b, fb = b, fb, c, fc
            delta_e = abs(b - a)
            if delta_e < tol * max(1.0, abs(b)):
                break
        energy = b
        mismatch, nodes = shoot(problem, energy, local_tol, return_nodes=True)
        if nodes != k:
            raise BracketingFailure(
                f"level {k}: node count {nodes} disagrees with index"
            )
        err = max(delta_e, 5e-12 * max(1.0, abs(energy)))
        levels.append(SpectrumLevel(k=k, energy=energy, err=err))
        e_prev = energy
        if k >= 4:
            ks = np.arange(max(0, k - 7), k + 1) + delta
            es = np.array([levels[i].energy for i in range(max(0, k - 7), k + 1)])
            amp = float(np.exp(np.mean(np.log(es) - p * np.log(ks))))
    return Spectrum(problem, tuple(levels), "shooting")


def _cheb_diff(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Chebyshev points on [-1, 1] (descending) and differentiation matrix."""
    if n == 0:
        return np.array([1.0]), np.zeros((1, 1))
    x = np.cos(math.pi * np.arange(n + 1) / n)
    c = np.hstack([2.0, np.ones(n - 1), 2.0]) * (-1.0) ** np.arange(n + 1)
    X = np.tile(x, (n + 1, 1)).T
    dX = X - X.T
    D = np.outer(c, 1.0 / c) / (dX + np.eye(n + 1))
    D -= np.diag(D.sum(axis=1))
    return x, D


def collocation_spectrum(
    problem: ProblemSpec,
    count: int,
    basis_size: int | None = None,
) -> Spectrum:
    """Dense Chebyshev collocation oracle for the first `count` levels.

    Works on the regularised unknown u = psi / x^{1/2+lambda_eff}, whose
    equation has the first-derivative coefficient -2(1/2+lambda_eff)/x
    and no centrifugal singularity.  u'(0) = 0 and u(L) = 0 close the
    system; the generalised eigenproblem keeps the boundary rows
    E-independent.
    """
    if count < 1:
        raise DomainError("collocation_spectrum: count must be positive")
    if basis_size is None:
        basis_size = max(4 * count, 160)
    if basis_size < 4 * count:
        raise DomainError("collocation_spectrum: basis_size must be at least 4*count")
    le = problem.effective_lambda
    if le < -0.5:
        raise DomainError("collocation_spectrum: boundary exponent out of range")
    M, alpha = problem.M, problem.alpha
    e_top = wkb_estimate(problem, count + 4)
    L = 1.35 * e_top ** (1.0 / (2.0 * M)) + 2.5
    n = basis_size
    t, D = _cheb_diff(n)
    # map t in [-1,1] (descending) to x in [0, L] ascending
    x = L * (1.0 - t) / 2.0
    Dx = D * (-2.0 / L)
    D2 = Dx @ Dx
    W = x ** (2.0 * M) + alpha * np.where(x > 0.0, x, 1.0) ** (M - 1.0)
    W[np.isclose(x, 0.0)] = 0.0
    A = -D2 - np.diag(np.where(x > 0.0, 2.0 * (0.5 + le) / np.where(x > 0, x, 1.0), 0.0)) @ Dx
    A += np.diag(W)
    B = np.eye(n + 1)
    # x ascending corresponds to reversed index order; row 0 of x-sorted grid
    order = np.argsort(x)
    A = A[np.ix_(order, order)]
    Dx_s = Dx[np.ix_(order, order)]
    B = np.eye(n + 1)
    # boundary rows: u'(0) = 0 at first point, u(L) = 0 at last point
    A[0, :] = Dx_s[0, :]
    B[0, :] = 0.0
    A[-1, :] = 0.0
    A[-1, -1] = 1.0
    B[-1, :] = 0.0
    vals = dense_eig(A, B, right=False)
    vals = vals[np.isfinite(vals)]
    vals = vals[np.abs(vals.imag) < 1e-6 * (np.abs(vals.real) + 1.0)].real
    vals = np.sort(vals[vals > -1e3])
    # keep only levels resolved by the grid
    if len(vals) < count:
        raise DiscretizationError("collocation produced too few converged eigenvalues")
    levels = []
    for k in range(count):
        err = max(1e-9 * max(1.0, abs(vals[k])), 1e-12)
        levels.append(SpectrumLevel(k=k, energy=float(vals[k]), err=err))
    return Spectrum(problem, tuple(levels), "collocation")
