"""Shared random-parameter generators for the property suites.

Everything is seeded; tests are deterministic run to run.
"""
from __future__ import annotations

import math

import numpy as np

import contactbands as cb


def random_hermitian(rng: np.random.Generator, theta: str = "mixed") -> cb.ContactParams:
    """Valid Hermitian set: alpha free, delta fixed by the determinant."""
    alpha = rng.uniform(0.3, 3.0) * rng.choice([-1.0, 1.0])
    beta = rng.uniform(-2.0, 2.0)
    if rng.random() < 0.15:
        beta = 0.0
    gamma = rng.uniform(-3.0, 3.0)
    delta = (1.0 + beta * gamma) / alpha
    th = _theta(rng, theta)
    return cb.hermitian(alpha, beta, gamma, delta, th)


def random_hermitian_parity(rng: np.random.Generator, theta: str = "mixed") -> cb.ContactParams:
    """Hermitian set with alpha = delta (parity-symmetric)."""
    beta = rng.uniform(-2.0, 2.0)
    gamma = rng.uniform(-3.0, 3.0)
    while 1.0 + beta * gamma <= 1e-3:
        beta = rng.uniform(-2.0, 2.0)
        gamma = rng.uniform(-3.0, 3.0)
    alpha = math.sqrt(1.0 + beta * gamma) * rng.choice([-1.0, 1.0])
    return cb.hermitian(alpha, beta, gamma, alpha, _theta(rng, theta))


def random_pt(rng: np.random.Generator, theta: str = "mixed") -> cb.ContactParams:
    """Valid PT set; gamma fixed by the determinant (or free when beta = 0)."""
    if rng.random() < 0.15:
        # beta = 0 requires |alpha| = 1; keep Re alpha away from 0
        phi = rng.uniform(0.1, math.pi / 2 - 0.1) * rng.choice([-1.0, 1.0])
        alpha = complex(math.cos(phi), math.sin(phi))
        gamma = rng.uniform(-2.0, 2.0)
        return cb.pt_symmetric(alpha, 0.0, gamma, _theta(rng, theta))
    a_re = rng.uniform(0.05, 2.0) * rng.choice([-1.0, 1.0])
    a_im = rng.uniform(-2.0, 2.0)
    beta = rng.uniform(0.2, 2.0) * rng.choice([-1.0, 1.0])
    return cb.pt_from_alpha_beta(complex(a_re, a_im), beta, _theta(rng, theta))


def _theta(rng: np.random.Generator, mode: str) -> float:
    if mode == "zero":
        return 0.0
    if mode == "nonzero":
        return rng.uniform(-math.pi, math.pi)
    return 0.0 if rng.random() < 0.5 else rng.uniform(-math.pi, math.pi)


def random_hermitian_lattice(rng: np.random.Generator) -> cb.LatticeParams:
    """Two-bound-state Hermitian lattice with the transfer-matrix oracle in
    its trustworthy range (kappa * ell small enough that e^{kappa ell} does
    not amplify roundoff past the oracle tolerance)."""
    k2 = rng.uniform(0.8, 1.4)
    gap = rng.uniform(0.6, 1.2)
    k1 = k2 + gap
    beta = rng.choice([-1.0, 1.0]) * (2.0 / gap) * rng.uniform(1.0, 2.0)
    sign = cb.BranchSign.PLUS if rng.random() < 0.5 else cb.BranchSign.MINUS
    p = cb.from_root_parametrization(cb.RootParametrization(beta, k1, k2, sign))
    if rng.random() < 0.5:
        p = p.with_theta(rng.uniform(-math.pi, math.pi))
    ell = rng.uniform(2.5, min(4.0, 8.0 / k1))
    return cb.LatticeParams(p, ell)


def random_pt_lattice(rng: np.random.Generator) -> cb.LatticeParams:
    kbar = rng.uniform(0.9, 1.6)
    beta = rng.uniform(0.5, 2.0)
    a_im = rng.uniform(0.2, 1.5)
    theta = rng.uniform(-math.pi, math.pi) if rng.random() < 0.5 else 0.0
    p = cb.pt_from_alpha_beta(complex(-kbar * beta, a_im), beta, theta)
    kmax = kbar + (math.sqrt(abs(1.0 - a_im * a_im)) / beta if a_im < 1.0 else 0.0)
    ell = rng.uniform(2.5, min(4.0, 8.0 / max(kmax, 0.1)))
    return cb.LatticeParams(p, ell)
