"""Shared numerical kernels: stable quadratics, damped complex Newton, 2x2 solvers.

All kernels are stateless and deterministic: the same inputs produce bitwise
identical outputs.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

from .errors import DomainError, RealAxisPoleError

_EPS = 2.220446049250313e-16


@dataclass(frozen=True)
class RootFindConfig:
    max_iter: int = 60
    tol_residual: float = 1e-12
    step_clamp: float = 0.5  # maximum step, in units of the seed magnitude

    def __post_init__(self) -> None:
        if self.max_iter < 1:
            raise DomainError("max_iter must be >= 1")
        if self.tol_residual <= 0.0:
            raise DomainError("tol_residual must be positive")


def solve_quadratic_stable(a2: complex, a1: complex, a0: complex) -> Tuple[complex, Optional[complex]]:
    """Roots of ``a2*x**2 + a1*x + a0 = 0`` without subtractive cancellation.

    The larger-magnitude root is computed from the sign-matched branch of the
    quadratic formula, the other from the root product.  Returns the pair
    ordered by descending magnitude; a linear equation (``a2 == 0``) returns
    its single root with ``None`` in the second slot.
    """
    a2, a1, a0 = complex(a2), complex(a1), complex(a0)
    if a2 == 0:
        if a1 == 0:
            raise DomainError("degenerate quadratic: a2 = a1 = 0")
        return -a0 / a1, None
    if a0 == 0:
        return -a1 / a2, 0j
    sq = cmath.sqrt(a1 * a1 - 4.0 * a2 * a0)
    if a1.real * sq.real + a1.imag * sq.imag >= 0.0:
        q = -0.5 * (a1 + sq)
    else:
        q = -0.5 * (a1 - sq)
    r1 = q / a2
    r2 = a0 / q
    if abs(r1) >= abs(r2):
        return r1, r2
    return r2, r1


def eig_2x2(m11: complex, m12: complex, m21: complex, m22: complex) -> Tuple[complex, complex]:
    """Eigenvalues of a 2x2 complex matrix via the trace/determinant quadratic."""
    tr = m11 + m22
    det = m11 * m22 - m12 * m21
    lam1, lam2 = solve_quadratic_stable(1.0, -tr, det)
    assert lam2 is not None
    return lam1, lam2


def solve_2x2(a11: complex, a12: complex, a21: complex, a22: complex,
              b1: complex, b2: complex) -> Tuple[complex, complex]:
    """Solve the 2x2 linear system A x = b by Cramer's rule.

    Raises RealAxisPoleError when the system is singular relative to the
    size of its entries.
    """
    det = a11 * a22 - a12 * a21
    scale = max(abs(a11) * abs(a22), abs(a12) * abs(a21), 1e-300)
    if abs(det) < 64.0 * _EPS * scale:
        raise RealAxisPoleError("singular 2x2 system (pole on the real axis)")
    x1 = (b1 * a22 - a12 * b2) / det
    x2 = (a11 * b2 - b1 * a21) / det
    return x1, x2


def newton_complex(f: Callable[[complex], complex], df: Callable[[complex], complex],
                   seed: complex, cfg: RootFindConfig = RootFindConfig()) -> Optional[complex]:
    """Damped Newton iteration in the complex plane.

    Steps are clamped to ``cfg.step_clamp`` times the seed magnitude and
    halved until the residual decreases.  A run of non-productive steps on
    the real axis triggers a fixed off-axis nudge so that roots of
    real-coefficient functions with no real zeros remain reachable.  Returns
    the root, or None when no root was located within ``cfg.max_iter`` steps.
    """
    z = complex(seed)
    clamp = cfg.step_clamp * max(abs(z), 1.0)
    fz = complex(f(z))
    slow = 0
    kicks = 0
    for _ in range(cfg.max_iter):
        if not cmath.isfinite(fz):
            return None
        if abs(fz) <= cfg.tol_residual:
            return z
        dfz = complex(df(z))
        if abs(dfz) <= 1e-280 * (1.0 + abs(fz)) or not cmath.isfinite(dfz):
            # derivative collapsed: sidestep rather than divide
            step = complex(0.0, -0.25 * clamp)
        else:
            step = fz / dfz
        mag = abs(step)
        if mag > clamp:
            step *= clamp / mag
        accepted = False
        lam = 1.0
        for _ in range(8):
            zn = z - lam * step
            fn = complex(f(zn))
            if cmath.isfinite(fn) and abs(fn) < abs(fz):
                if abs(lam * step) <= 4.0 * _EPS * max(1.0, abs(z)):
                    return zn  # stationary at machine precision
                slow = slow + 1 if abs(fn) > 0.9 * abs(fz) else 0
                z, fz = zn, fn
                accepted = True
                break
            lam *= 0.5
        stuck_on_axis = abs(z.imag) <= 1e-12 * max(1.0, abs(z.real))
        if (not accepted or slow >= 3) and stuck_on_axis and kicks < 2:
            z = complex(z.real, z.imag + 0.5 * clamp)
            fz = complex(f(z))
            slow = 0
            kicks += 1
        elif not accepted:
            return None
    return None
