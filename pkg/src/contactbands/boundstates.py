"""Bound states of a single contact interaction.

A decaying solution ``exp(-kappa |x|)`` with Re kappa > 0 has energy
``E = -kappa**2 / 2``; the matching condition turns into the dispersion
quadratic ``beta*kappa**2 + (alpha + delta)*kappa + gamma = 0``, which this
module solves in closed form for both symmetry classes.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence, Tuple

from .errors import DomainError
from .params import ContactParams, SymmetryClass, hermitian

#: roots with |Re kappa| below this are marginal (non-normalizable), not bound
MARGINAL_TOL = 1e-12
#: relative closeness at which a root pair is reported as degenerate
DEGENERATE_TOL = 1e-9


class SpectrumKind(Enum):
    EMPTY = "empty"
    ONE_REAL = "one_real"
    TWO_REAL = "two_real"
    CONJUGATE_PAIR = "conjugate_pair"
    DEGENERATE_PAIR = "degenerate_pair"


class PtPhase(Enum):
    UNBROKEN = "unbroken"
    BROKEN = "broken"
    CRITICAL = "critical"


class BranchSign(Enum):
    PLUS = 1
    MINUS = -1


def dispersion_roots(beta: float, trace: float, gamma: float
                     ) -> Tuple[Tuple[complex, ...], Optional[str]]:
    """All roots of ``beta*k**2 + trace*k + gamma = 0`` (real coefficients).

    Returns the roots in the (+, -) branch order of the explicit formula,
    together with an optional note for the degenerate linear cases.  Real
    roots come out with exactly zero imaginary part and complex pairs as
    exact conjugates.
    """
    beta, trace, gamma = float(beta), float(trace), float(gamma)
    if beta == 0.0:
        if trace == 0.0:
            if gamma == 0.0:
                return (), "degenerate free case: condition holds identically"
            return (), "no quantization condition"
        return (complex(-gamma / trace),), None
    disc = trace * trace - 4.0 * beta * gamma
    if disc >= 0.0:
        s = math.sqrt(disc)
        if trace >= 0.0:
            q = -0.5 * (trace + s)
            if q == 0.0:  # trace = 0 and gamma = 0: double root at the origin
                return (0j, 0j), None
            minus, plus = q / beta, gamma / q
        else:
            q = -0.5 * (trace - s)
            plus, minus = q / beta, gamma / q
        return (complex(plus), complex(minus)), None
    im = math.sqrt(-disc) / (2.0 * beta)
    re = -trace / (2.0 * beta)
    return (complex(re, im), complex(re, -im)), None


@dataclass(frozen=True)
class BoundStateSet:
    """Admissible decay rates of one interaction, with their classification.

    ``roots`` holds only kappa with Re kappa > 0; ``analytic_roots`` keeps
    every root of the dispersion relation and ``marginal`` the excluded
    near-zero ones.  Energies are recomputed from the roots on access.
    """

    roots: Tuple[complex, ...]
    classification: SpectrumKind
    analytic_roots: Tuple[complex, ...]
    marginal: Tuple[complex, ...] = ()
    note: Optional[str] = None

    @property
    def energies(self) -> Tuple[complex, ...]:
        return tuple(-0.5 * k * k for k in self.roots)


def _classify(roots: Sequence[complex]) -> SpectrumKind:
    if not roots:
        return SpectrumKind.EMPTY
    if len(roots) == 1:
        return SpectrumKind.ONE_REAL
    r0, r1 = roots
    if abs(r0 - r1) < DEGENERATE_TOL * (1.0 + abs(r0)):
        return SpectrumKind.DEGENERATE_PAIR
    if abs(r0.imag) < MARGINAL_TOL and abs(r1.imag) < MARGINAL_TOL:
        return SpectrumKind.TWO_REAL
    if abs(r0 - r1.conjugate()) < MARGINAL_TOL * (1.0 + abs(r0)):
        return SpectrumKind.CONJUGATE_PAIR
    return SpectrumKind.TWO_REAL


def bound_states(p: ContactParams) -> BoundStateSet:
    """Closed-form bound spectrum; independent of the phase theta."""
    if p.cls not in (SymmetryClass.HERMITIAN, SymmetryClass.PT_SYMMETRIC):
        raise DomainError("bound states are defined for the hermitian and pt classes")
    analytic, note = dispersion_roots(p.beta, p.trace, p.gamma)
    admissible: List[complex] = []
    marginal: List[complex] = []
    for kappa in analytic:
        if abs(kappa.real) < MARGINAL_TOL:
            marginal.append(kappa)
        elif kappa.real > 0.0:
            admissible.append(kappa)
    admissible.sort(key=lambda z: (-z.real, -z.imag))
    return BoundStateSet(tuple(admissible), _classify(admissible),
                         analytic, tuple(marginal), note)


def pt_phase(p: ContactParams) -> PtPhase:
    """Phase of the PT-symmetric bound spectrum.

    BROKEN means a genuinely complex-conjugate pair of bound energies;
    CRITICAL marks the exceptional boundary |Im alpha| = 1 (and the marginal
    purely-imaginary-root edge Re alpha = 0, where no physics is asserted).
    """
    if p.cls is not SymmetryClass.PT_SYMMETRIC:
        raise DomainError("pt_phase requires a PT-symmetric parameter set")
    if p.beta == 0.0:
        return PtPhase.UNBROKEN
    a_im, a_re = p.alpha.imag, p.alpha.real
    if abs(abs(a_im) - 1.0) <= MARGINAL_TOL:
        return PtPhase.CRITICAL
    if abs(a_im) > 1.0:
        if abs(a_re) <= MARGINAL_TOL:
            return PtPhase.CRITICAL
        return PtPhase.BROKEN if -a_re / p.beta > 0.0 else PtPhase.UNBROKEN
    return PtPhase.UNBROKEN


@dataclass(frozen=True)
class PitchforkPoint:
    alpha_i: float
    kappa_plus: complex
    kappa_minus: complex
    admissible_count: int


def pitchfork_scan(alpha_r: float, beta: float,
                   alpha_i_grid: Sequence[float]) -> Tuple[PitchforkPoint, ...]:
    """Both analytic root branches along an Im(alpha) scan at fixed Re(alpha).

    gamma is fixed per point by the unit-determinant constraint
    |alpha|**2 - beta*gamma = 1.  Roots are recorded regardless of sign of
    their real part; ``admissible_count`` says how many are bound states.
    """
    if beta == 0.0:
        raise DomainError("pitchfork scan requires beta != 0")
    points = []
    for a_im in alpha_i_grid:
        a_im = float(a_im)
        gamma = (alpha_r * alpha_r + a_im * a_im - 1.0) / beta
        roots, _ = dispersion_roots(beta, 2.0 * alpha_r, gamma)
        kp, km = roots
        count = sum(1 for z in (kp, km) if z.real >= MARGINAL_TOL)
        points.append(PitchforkPoint(a_im, kp, km, count))
    return tuple(points)


@dataclass(frozen=True)
class RootParametrization:
    """Hermitian interaction described by beta and its two real decay rates.

    The determinant constraint forces ``(kappa1 - kappa2) * |beta| >= 2``;
    the leftover sign of alpha - delta must be chosen explicitly.
    """

    beta: float
    kappa1: float
    kappa2: float
    sign_alpha_minus_delta: BranchSign = BranchSign.PLUS

    def __post_init__(self) -> None:
        if self.beta == 0.0:
            raise DomainError("root parametrization requires beta != 0")
        if not self.kappa1 > self.kappa2:
            raise DomainError("root parametrization requires kappa1 > kappa2")
        if (self.kappa1 - self.kappa2) * abs(self.beta) < 2.0:
            raise DomainError("root-gap constraint violated: (kappa1 - kappa2)*|beta| < 2")


def from_root_parametrization(r: RootParametrization) -> ContactParams:
    """Reconstruct the Hermitian coefficients from (beta, kappa1, kappa2)."""
    beta, k1, k2 = r.beta, r.kappa1, r.kappa2
    total = -beta * (k1 + k2)              # alpha + delta
    gamma = beta * k1 * k2
    gap_sq = beta * beta * (k1 - k2) ** 2 - 4.0
    diff = r.sign_alpha_minus_delta.value * math.sqrt(max(gap_sq, 0.0))
    return hermitian(0.5 * (total + diff), beta, gamma, 0.5 * (total - diff), 0.0)
