"""Scattering amplitudes, the 2x2 S-matrix, and its eigenvalue structure.

Transmission/reflection amplitudes are obtained by solving the boundary
condition as a 2x2 linear system for each incidence side; the transmission
is cross-checkable against the closed form
``t0 = 2ik / (beta*k**2 + ik*(alpha+delta) - gamma)``.

Unitarity of S holds for the self-adjoint class; the PT class satisfies the
pseudo-unitarity conj(S) S = 1 instead, and its eigenvalue pair can leave the
unit circle (scattering-sector PT breaking).
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import curve_fit

from .boundstates import bound_states, SpectrumKind
from .errors import DegenerateEigenproblemError, DomainError
from .numerics import solve_2x2, solve_quadratic_stable
from .params import ContactParams, SymmetryClass

#: threshold detection width for the unimodularity margin
THRESHOLD_TOL = 1e-12


class UnimodularityState(Enum):
    UNIMODULAR = "unimodular"
    BROKEN = "broken"
    THRESHOLD = "threshold"


@dataclass(frozen=True)
class ScatteringSolution:
    """Amplitudes for both incidence sides at one real wavenumber.

    ``t, r`` refer to a wave incident from the left, ``t_prime, r_prime``
    from the right.  ``s_matrix`` has rows (t0 e^{-i theta}, r'; r, t0 e^{i theta})
    where t0 is the phase-free transmission, i.e. diag = (t', t).
    """

    k: float
    t: complex
    r: complex
    t_prime: complex
    r_prime: complex

    @property
    def s_matrix(self) -> np.ndarray:
        return np.array([[self.t_prime, self.r_prime],
                         [self.r, self.t]], dtype=complex)


def transmission_amplitude(p: ContactParams, k: complex) -> complex:
    """Phase-free transmission, valid for complex k (analytic continuation).

    Its poles sit at k = i*kappa for every root kappa of the dispersion
    quadratic, bound state or not.
    """
    k = complex(k)
    den = p.beta * k * k + 1j * k * p.trace - p.gamma
    return 2j * k / den


def scatter(p: ContactParams, k: float) -> ScatteringSolution:
    """Solve both incidence problems at real k > 0.

    Raises RealAxisPoleError if the boundary-condition system is singular at
    this k, and DomainError for k <= 0 or an unsupported class.
    """
    if p.cls not in (SymmetryClass.HERMITIAN, SymmetryClass.PT_SYMMETRIC):
        raise DomainError("scattering is defined for the hermitian and pt classes")
    k = float(k)
    if k <= 0.0:
        raise DomainError("wavenumber must be positive")
    a, b, c, d = p.abcd()
    ik = 1j * k
    # left incidence: psi = e^{ikx} + r e^{-ikx} | t e^{ikx}
    t, r = solve_2x2(1.0, -(a - ik * b), ik, -(c - ik * d),
                     a + ik * b, c + ik * d)
    # right incidence: psi = t' e^{-ikx} | e^{-ikx} + r' e^{ikx}
    tp, rp = solve_2x2(a - ik * b, -1.0, c - ik * d, -ik,
                       1.0, -ik)
    return ScatteringSolution(k, t, r, tp, rp)


@dataclass(frozen=True)
class SMatrixEigenproblem:
    """Eigenvalue pair of the S-matrix at one wavenumber.

    The pair solves ``Delta*lam**2 + 4ik cos(theta)*lam - conj(Delta) = 0``
    with ``Delta = gamma - beta*k**2 - ik*(alpha + delta)``; the product of
    the magnitudes is always one, and both are unimodular exactly when
    |Delta| >= 2k|cos theta|.
    """

    k: float
    delta: complex
    lambda_plus: complex
    lambda_minus: complex
    state: UnimodularityState

    @property
    def broken(self) -> bool:
        return self.state is UnimodularityState.BROKEN


def _delta_coefficient(p: ContactParams, k: float) -> complex:
    return complex(p.gamma - p.beta * k * k, -k * p.trace)


def s_eigenvalues(p: ContactParams, k: float) -> SMatrixEigenproblem:
    """Both S-matrix eigenvalues and the unimodularity verdict at real k."""
    if p.cls not in (SymmetryClass.HERMITIAN, SymmetryClass.PT_SYMMETRIC):
        raise DomainError("eigenvalue analysis needs real beta, gamma, alpha+delta")
    k = float(k)
    if k <= 0.0:
        raise DomainError("wavenumber must be positive")
    delta = _delta_coefficient(p, k)
    cos_t = math.cos(p.theta)
    if abs(delta) <= 1e-14 * (1.0 + abs(p.beta) * k * k + abs(p.gamma) + k * abs(p.trace)):
        raise DegenerateEigenproblemError("degenerate eigenproblem: Delta = 0")
    lam1, lam2 = solve_quadratic_stable(delta, 4j * k * cos_t, -delta.conjugate())
    assert lam2 is not None
    margin = abs(delta) - 2.0 * k * abs(cos_t)
    if abs(margin) < THRESHOLD_TOL:
        state = UnimodularityState.THRESHOLD
    elif margin < 0.0:
        state = UnimodularityState.BROKEN
    else:
        state = UnimodularityState.UNIMODULAR
    return SMatrixEigenproblem(k, delta, lam1, lam2, state)


def unimodularity_margin(p: ContactParams, k: float) -> float:
    """|Delta|**2 - 4 k**2 cos(theta)**2 in its cancellation-free form
    ``(gamma + beta*k**2)**2 + Re[(alpha - delta)**2]*k**2 + 4*k**2*sin(theta)**2``.

    Negative exactly where the S-matrix eigenvalues leave the unit circle.
    """
    k = float(k)
    diff_sq = ((p.alpha - p.delta) ** 2).real
    sin_t = math.sin(p.theta)
    return ((p.gamma + p.beta * k * k) ** 2
            + diff_sq * k * k + 4.0 * k * k * sin_t * sin_t)


@dataclass(frozen=True)
class BreakingWindowPoint:
    k: float
    margin: float
    broken: bool


def pt_breaking_window(p: ContactParams, k_grid: Sequence[float]
                       ) -> Tuple[BreakingWindowPoint, ...]:
    """Unimodularity margin and broken flag along a wavenumber grid."""
    if p.cls is not SymmetryClass.PT_SYMMETRIC:
        raise DomainError("breaking window is a PT-class diagnostic")
    out = []
    for k in k_grid:
        m = unimodularity_margin(p, float(k))
        out.append(BreakingWindowPoint(float(k), m, m < 0.0))
    return tuple(out)


@dataclass(frozen=True)
class LorentzianFit:
    center: float
    width: float
    amplitude: float
    r_squared: float


@dataclass(frozen=True)
class ResonanceProfile:
    ks: Tuple[float, ...]
    intensity: Tuple[float, ...]        # |t|^2, NaN at flagged samples
    flagged: Tuple[bool, ...]           # samples at (or too near) a real-axis pole
    fit: Optional[LorentzianFit]
    predicted_center: Optional[float]   # |Im kappa| when the spectrum is a conjugate pair
    predicted_width: Optional[float]    # Re kappa of that pair


def _lorentzian(k, amplitude, center, width):
    return amplitude * width ** 2 / ((k - center) ** 2 + width ** 2)


def resonance_profile(p: ContactParams, k_grid: Sequence[float]) -> ResonanceProfile:
    """|t|^2 along a grid plus a three-parameter Lorentzian fit of its peak.

    The fit is initialized at the grid maximum; samples on top of a real-axis
    pole are flagged and excluded rather than fatal.  When the bound spectrum
    is a conjugate pair kappa = kbar +- i*eps, the pole-derived prediction
    (center ~ eps, width ~ kbar) is attached for comparison.
    """
    if abs(p.theta) > 1e-12:
        raise DomainError("resonance profile assumes theta = 0 (|t| is theta-free anyway)")
    ks = [float(k) for k in k_grid]
    vals: list = []
    flagged = []
    scale = 1.0 + abs(p.beta) + abs(p.gamma) + abs(p.trace)
    for k in ks:
        den = p.beta * k * k + 1j * k * p.trace - p.gamma
        if abs(den) < 1e-12 * scale * max(1.0, k * k):
            vals.append(math.nan)
            flagged.append(True)
            continue
        t0 = 2j * k / den
        vals.append(abs(t0) ** 2)
        flagged.append(False)
    arr_k = np.array(ks)
    arr_v = np.array(vals)
    good = ~np.isnan(arr_v)

    fit = None
    if good.sum() >= 5:
        gk, gv = arr_k[good], arr_v[good]
        imax = int(np.argmax(gv))
        if 0 < imax < len(gk) - 1:  # interior maximum: try to fit it
            p0 = (gv[imax], gk[imax], max((gk[-1] - gk[0]) / 10.0, 1e-3))
            try:
                popt, _ = curve_fit(_lorentzian, gk, gv, p0=p0, maxfev=10000)
                resid = gv - _lorentzian(gk, *popt)
                ss_tot = float(np.sum((gv - gv.mean()) ** 2))
                r2 = 1.0 - float(np.sum(resid ** 2)) / ss_tot if ss_tot > 0 else 0.0
                fit = LorentzianFit(float(popt[1]), abs(float(popt[2])),
                                    float(popt[0]), r2)
            except RuntimeError:
                fit = None

    center = width = None
    spectrum = bound_states(p)
    if spectrum.classification is SpectrumKind.CONJUGATE_PAIR:
        center = abs(spectrum.roots[0].imag)
        width = spectrum.roots[0].real
    return ResonanceProfile(tuple(ks), tuple(float(v) for v in vals),
                            tuple(flagged), fit, center, width)
