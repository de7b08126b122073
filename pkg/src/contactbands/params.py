"""Parameter sets for generalized zero-range contact interactions.

A contact interaction is a linear boundary condition matching the wavefunction
and its derivative across a single point,

    (psi, psi')(0+) = e^{i theta} [[alpha, beta], [gamma, delta]] (psi, psi')(0-),

with ``alpha*delta - beta*gamma = 1``.  Self-adjointness requires real
``alpha..delta``; invariance under combined parity and conjugation instead
requires ``delta = conj(alpha)`` with ``beta, gamma`` real.  Units are fixed
so that hbar = m = 1 throughout the package.
"""
from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass
from enum import Enum
from typing import Tuple

from .errors import DomainError

#: absolute tolerance for all symmetry-class membership checks
CLASS_TOL = 1e-12


class SymmetryClass(Enum):
    HERMITIAN = "hermitian"
    PT_SYMMETRIC = "pt"
    PARITY_ONLY = "parity_only"
    TIME_REVERSAL_ONLY = "time_reversal_only"
    GENERAL = "general"


def normalize_phase(theta: float) -> float:
    """Map a phase to the canonical interval (-pi, pi]."""
    t = math.remainder(float(theta), 2.0 * math.pi)
    if t <= -math.pi:
        t += 2.0 * math.pi
    return t


@dataclass(frozen=True)
class ContactParams:
    """Factored boundary-condition coefficients with an overall phase.

    Immutable value object; the symmetry class is a declared tag, checked by
    :func:`validate` rather than enforced at construction.
    """

    alpha: complex
    beta: float
    gamma: float
    delta: complex
    theta: float = 0.0
    cls: SymmetryClass = SymmetryClass.GENERAL

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha", complex(self.alpha))
        object.__setattr__(self, "beta", float(self.beta))
        object.__setattr__(self, "gamma", float(self.gamma))
        object.__setattr__(self, "delta", complex(self.delta))
        object.__setattr__(self, "theta", normalize_phase(self.theta))

    @property
    def trace(self) -> float:
        """Real part of alpha + delta (real for both solver classes)."""
        return (self.alpha + self.delta).real

    @property
    def determinant(self) -> complex:
        return self.alpha * self.delta - self.beta * self.gamma

    def abcd(self) -> Tuple[complex, complex, complex, complex]:
        """Raw coefficients including the phase factor."""
        ph = cmath.exp(1j * self.theta)
        return ph * self.alpha, ph * self.beta, ph * self.gamma, ph * self.delta

    def with_theta(self, theta: float) -> "ContactParams":
        return ContactParams(self.alpha, self.beta, self.gamma, self.delta, theta, self.cls)


def hermitian(alpha: float, beta: float, gamma: float, delta: float,
              theta: float = 0.0) -> ContactParams:
    """Self-adjoint parameter set from real factored coefficients."""
    return ContactParams(float(alpha), beta, gamma, float(delta), theta,
                         SymmetryClass.HERMITIAN)


def pt_symmetric(alpha: complex, beta: float, gamma: float,
                 theta: float = 0.0) -> ContactParams:
    """PT-symmetric parameter set; delta is fixed to conj(alpha)."""
    alpha = complex(alpha)
    return ContactParams(alpha, beta, gamma, alpha.conjugate(), theta,
                         SymmetryClass.PT_SYMMETRIC)


def pt_from_alpha_beta(alpha: complex, beta: float, theta: float = 0.0) -> ContactParams:
    """PT-symmetric set with gamma fixed by the unit-determinant constraint."""
    alpha = complex(alpha)
    beta = float(beta)
    if beta == 0.0:
        raise DomainError("beta = 0 leaves gamma unconstrained; pass it explicitly")
    # alpha_re^2 + alpha_im^2, not abs()**2: the sqrt round trip would spoil
    # the determinant at exactly-critical points
    gamma = (alpha.real * alpha.real + alpha.imag * alpha.imag - 1.0) / beta
    return pt_symmetric(alpha, beta, gamma, theta)


def from_delta_strength(strength: float) -> ContactParams:
    """Conventional delta potential of the given strength (identity matching
    of psi, derivative jump 2*strength*psi)."""
    lam = float(strength)
    if not math.isfinite(lam):
        raise DomainError("delta strength must be finite")
    return hermitian(1.0, 0.0, 2.0 * lam, 1.0, 0.0)


class TrajectoryKind(Enum):
    GAMMA_RAY = "gamma_ray"
    HYPERBOLIC = "hyperbolic"


@dataclass(frozen=True)
class TrajectoryParams:
    """A one-parameter path through the self-adjoint family.

    GAMMA_RAY interpolates from no interaction to disconnected half lines by
    turning up the delta strength; HYPERBOLIC does the same while ending in
    Robin conditions with length ``xi`` on either side.
    """

    kind: TrajectoryKind
    xi: float = 1.0
    s: float = 0.0

    def __post_init__(self) -> None:
        if self.kind is TrajectoryKind.HYPERBOLIC and self.xi == 0.0:
            raise DomainError("hyperbolic trajectory requires xi != 0")
        if self.s < 0.0:
            raise DomainError("trajectory parameter must be >= 0")


def trajectory_point(traj: TrajectoryParams, value: float) -> ContactParams:
    """Evaluate a trajectory at coordinate ``value`` (gamma or s)."""
    value = float(value)
    if value < 0.0:
        raise DomainError("trajectory coordinate must be >= 0")
    if traj.kind is TrajectoryKind.GAMMA_RAY:
        return hermitian(1.0, 0.0, value, 1.0, 0.0)
    if traj.xi == 0.0:
        raise DomainError("hyperbolic trajectory requires xi != 0")
    ch, sh = math.cosh(value), math.sinh(value)
    return hermitian(ch, traj.xi * sh, sh / traj.xi, ch, 0.0)


def classify_symmetry(a: complex, b: complex, c: complex, d: complex,
                      tol: float = CLASS_TOL) -> SymmetryClass:
    """Most restrictive symmetry class of raw coefficients, within ``tol``.

    Precedence: HERMITIAN / PT_SYMMETRIC (mutually exclusive), then
    PARITY_ONLY, then TIME_REVERSAL_ONLY, then GENERAL.  The first group is
    invariant under combined parity and conjugation; the HERMITIAN tag is the
    real (parity-symmetric, self-adjoint) member of that group.
    """
    vals = [complex(v) for v in (a, b, c, d)]
    if not all(cmath.isfinite(v) for v in vals):
        raise DomainError("coefficients must be finite")
    a, b, c, d = vals
    det = a * d - b * c
    if abs(abs(det) - 1.0) <= tol:
        # strip the overall phase fixed by det = e^{2 i theta}; the branch
        # ambiguity theta -> theta + pi only flips the sign of all entries
        ph = cmath.exp(-0.5j * cmath.phase(det))
        fa, fb, fc, fd = ph * a, ph * b, ph * c, ph * d
        if (abs(fb.imag) <= tol and abs(fc.imag) <= tol
                and abs(fd - fa.conjugate()) <= tol):
            if abs(fa.imag) <= tol:
                return SymmetryClass.HERMITIAN
            return SymmetryClass.PT_SYMMETRIC
    if abs(a - d) <= tol and abs(det - 1.0) <= tol:
        return SymmetryClass.PARITY_ONLY
    if all(abs(v.imag) <= tol for v in vals):
        return SymmetryClass.TIME_REVERSAL_ONLY
    return SymmetryClass.GENERAL


def pt_image(a: complex, b: complex, c: complex, d: complex
             ) -> Tuple[complex, complex, complex, complex]:
    """Coefficients of the boundary condition satisfied by conj(psi(-x)).

    PT-symmetric parameter sets are exactly the fixed points of this map.
    """
    det_conj = (a * d - b * c).conjugate()
    return (d.conjugate() / det_conj, b.conjugate() / det_conj,
            c.conjugate() / det_conj, a.conjugate() / det_conj)


@dataclass(frozen=True)
class Violation:
    name: str
    residual: float


@dataclass(frozen=True)
class ValidationReport:
    violations: Tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def __str__(self) -> str:
        if self.ok:
            return "valid"
        return "; ".join(f"{v.name} (residual {v.residual:.3g})" for v in self.violations)


def validate(p: ContactParams, tol: float = CLASS_TOL) -> ValidationReport:
    """Check a parameter set against its declared class.  Never raises."""
    bad = []
    entries = (p.alpha, complex(p.beta), complex(p.gamma), p.delta, complex(p.theta))
    if not all(cmath.isfinite(v) for v in entries):
        bad.append(Violation("non-finite entry", math.inf))
        return ValidationReport(tuple(bad))

    det_res = abs(p.determinant - 1.0)
    if p.cls is SymmetryClass.HERMITIAN:
        if abs(p.alpha.imag) > tol:
            bad.append(Violation("Im alpha != 0", abs(p.alpha.imag)))
        if abs(p.delta.imag) > tol:
            bad.append(Violation("Im delta != 0", abs(p.delta.imag)))
        if det_res > tol:
            bad.append(Violation("alpha*delta - beta*gamma != 1", det_res))
    elif p.cls is SymmetryClass.PT_SYMMETRIC:
        conj_res = abs(p.delta - p.alpha.conjugate())
        if conj_res > tol:
            bad.append(Violation("delta != conj(alpha)", conj_res))
        if det_res > tol:
            bad.append(Violation("alpha*delta - beta*gamma != 1", det_res))
    elif p.cls is SymmetryClass.PARITY_ONLY:
        a, b, c, d = p.abcd()
        if abs(a - d) > tol:
            bad.append(Violation("a != d", abs(a - d)))
        raw_det = abs(a * d - b * c - 1.0)
        if raw_det > tol:
            bad.append(Violation("a*d - b*c != 1", raw_det))
    elif p.cls is SymmetryClass.TIME_REVERSAL_ONLY:
        for name, v in zip("abcd", p.abcd()):
            if abs(v.imag) > tol:
                bad.append(Violation(f"Im {name} != 0", abs(v.imag)))
    return ValidationReport(tuple(bad))


_RECORD_KEYS = ("alpha_re", "alpha_im", "beta", "gamma",
                "delta_re", "delta_im", "theta", "class")


def to_record(p: ContactParams) -> dict:
    """Flat record with exact decimal round-trip of every float."""
    return {
        "alpha_re": p.alpha.real, "alpha_im": p.alpha.imag,
        "beta": p.beta, "gamma": p.gamma,
        "delta_re": p.delta.real, "delta_im": p.delta.imag,
        "theta": p.theta, "class": p.cls.value,
    }


def from_record(rec: dict) -> ContactParams:
    missing = [k for k in _RECORD_KEYS if k not in rec]
    if missing:
        raise DomainError(f"record is missing keys: {missing}")
    return ContactParams(
        complex(float(rec["alpha_re"]), float(rec["alpha_im"])),
        float(rec["beta"]), float(rec["gamma"]),
        complex(float(rec["delta_re"]), float(rec["delta_im"])),
        float(rec["theta"]), SymmetryClass(rec["class"]),
    )


def to_json(p: ContactParams) -> str:
    return json.dumps(to_record(p))


def from_json(text: str) -> ContactParams:
    return from_record(json.loads(text))
