"""Kronig-Penney lattices of generalized contact interactions.

Negative-energy Bloch states of a period-ell comb satisfy the transcendental
quantization condition

    [b k^2 + (a+d) k + g]  =  4 k cos(k_c ell - theta) e^{-k ell}
                              + [b k^2 - (a+d) k + g] e^{-2 k ell}

in the decay rate ``k`` (written kappa below) at crystal momentum ``k_c``.
The module solves it by seeded complex Newton continuation across the
Brillouin zone, provides the narrow-band closed forms for both symmetry
classes (including the band-touching cone regime), and classifies the PT
band pattern.  An independent one-cell transfer-matrix is included as a
cross-check path: kappa is a band root iff e^{i k_c ell} is an eigenvalue of
that matrix.
"""
from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass, replace
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .boundstates import bound_states, MARGINAL_TOL
from .errors import DomainError
from .numerics import newton_complex, RootFindConfig
from .params import ContactParams, SymmetryClass

_EPS = 2.220446049250313e-16
#: absolute root-coalescence scale for merges/dedup during a sweep
MERGE_TOL = 1e-9


@dataclass(frozen=True)
class LatticeParams:
    contact: ContactParams
    ell: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "ell", float(self.ell))
        if not (self.ell > 0.0):
            raise DomainError("lattice period must be positive")


class Regime(Enum):
    REAL_BANDS = "real_bands"
    CONJUGATE_PAIR_BANDS = "conjugate_pair_bands"
    PARTIAL_ONSET = "partial_onset"
    PARTIAL_COMPLETION = "partial_completion"
    HERMITIAN_GAPPED = "hermitian_gapped"
    HERMITIAN_DIRAC_CONE = "hermitian_dirac_cone"
    UNCLASSIFIED = "unclassified"


@dataclass(frozen=True)
class BandPoint:
    k: float
    kappa: complex
    residual: float

    @property
    def energy(self) -> complex:
        return -0.5 * self.kappa * self.kappa


@dataclass(frozen=True)
class BandStructure:
    points: Tuple[BandPoint, ...]
    band_index: int
    regime: Regime
    exceptional_ks: Tuple[float, ...] = ()


def fold_to_zone(k: float, ell: float) -> float:
    """Crystal momentum folded into (-pi/ell, pi/ell]."""
    period = 2.0 * math.pi / ell
    t = math.remainder(float(k), period)
    if t <= -0.5 * period:
        t += period
    return t


def default_zone_grid(ell: float, n_k: int = 201) -> np.ndarray:
    """Uniform n_k-point grid over (-pi/ell, pi/ell]."""
    if n_k < 2:
        raise DomainError("grid needs at least two points")
    edge = math.pi / ell
    return np.linspace(-edge, edge, n_k + 1)[1:]


def quantization_residual(lat: LatticeParams, kappa: complex, k: float) -> complex:
    """LHS minus RHS of the Bloch quantization condition at (kappa, k)."""
    p = lat.contact
    kappa = complex(kappa)
    e1 = cmath.exp(-kappa * lat.ell)
    cos_ph = math.cos(k * lat.ell - p.theta)
    forward = p.beta * kappa * kappa + p.trace * kappa + p.gamma
    backward = p.beta * kappa * kappa - p.trace * kappa + p.gamma
    return forward - 4.0 * kappa * cos_ph * e1 - backward * e1 * e1


def _residual_with_derivative(lat: LatticeParams, kappa: complex, k: float
                              ) -> Tuple[complex, complex]:
    p = lat.contact
    ell = lat.ell
    e1 = cmath.exp(-kappa * ell)
    e2 = e1 * e1
    cos_ph = math.cos(k * ell - p.theta)
    forward = p.beta * kappa * kappa + p.trace * kappa + p.gamma
    backward = p.beta * kappa * kappa - p.trace * kappa + p.gamma
    res = forward - 4.0 * kappa * cos_ph * e1 - backward * e2
    dres = (2.0 * p.beta * kappa + p.trace
            - 4.0 * cos_ph * e1 * (1.0 - kappa * ell)
            - (2.0 * p.beta * kappa - p.trace) * e2
            + 2.0 * ell * backward * e2)
    return res, dres


def _coefficient_scale(p: ContactParams, kappa_mag: float) -> float:
    m = max(kappa_mag, 1.0)
    return abs(p.beta) * m * m + abs(p.trace) * m + abs(p.gamma) + 1.0


def _polish(lat: LatticeParams, k: float, seed: complex,
            cfg: RootFindConfig) -> Optional[Tuple[complex, float]]:
    """Newton-polish one seed; returns (root, |residual|) or None."""
    scale = _coefficient_scale(lat.contact, abs(seed))
    tol = max(cfg.tol_residual, 8.0 * _EPS * scale)
    local = replace(cfg, tol_residual=tol)
    f = lambda z: _residual_with_derivative(lat, z, k)[0]
    df = lambda z: _residual_with_derivative(lat, z, k)[1]
    root = newton_complex(f, df, seed, local)
    if root is None:
        return None
    # push from the stopping tolerance down to the evaluation noise floor
    res = abs(quantization_residual(lat, root, k))
    for _ in range(3):
        r, dr = _residual_with_derivative(lat, root, k)
        if abs(dr) == 0.0:
            break
        candidate = root - r / dr
        cres = abs(quantization_residual(lat, candidate, k))
        if cres >= res:
            break
        root, res = candidate, cres
    return root, res


def solve_band(lat: LatticeParams, k: float,
               seeds: Optional[Sequence[complex]] = None,
               cfg: Optional[RootFindConfig] = None) -> List[BandPoint]:
    """Locally convergent roots of the quantization condition at one k.

    Seeds default to the isolated-interaction bound-state roots. Converged
    roots are deduplicated, and roots without decay (Re kappa <= 0) are
    discarded.  A non-convergent seed contributes nothing rather than failing.
    """
    if seeds is None:
        seeds = bound_states(lat.contact).roots
    cfg = cfg or RootFindConfig()
    k = fold_to_zone(k, lat.ell)
    found: List[BandPoint] = []
    for seed in seeds:
        polished = _polish(lat, k, complex(seed), cfg)
        if polished is None:
            continue
        root, res = polished
        if root.real <= MARGINAL_TOL:
            continue
        if any(abs(root - bp.kappa) < MERGE_TOL * (1.0 + abs(root)) for bp in found):
            continue
        found.append(BandPoint(k, root, res))
    found.sort(key=lambda bp: (-bp.kappa.real, -bp.kappa.imag))
    return found


def _second_root(lat: LatticeParams, k: float, base: complex,
                 cfg: RootFindConfig) -> Optional[Tuple[complex, float]]:
    """Partner root near an already-found root, via deflated Newton.

    Dividing the residual by (kappa - base) removes the known root, so the
    iteration cannot fall back into its basin; candidates are then re-polished
    on the undeflated residual.
    """
    def fg(z: complex) -> Tuple[complex, complex]:
        r, dr = _residual_with_derivative(lat, z, k)
        g = r / (z - base)
        return g, (dr - g) / (z - base)

    scale = max(abs(base), 1e-3)
    for frac in (0.01, 0.03, 0.1, 0.3):
        for direction in (1.0, -1.0, 1j, -1j):
            seed = base + direction * frac * scale
            cand = newton_complex(lambda z: fg(z)[0], lambda z: fg(z)[1], seed, cfg)
            if cand is None:
                continue
            polished = _polish(lat, k, cand, cfg)
            if polished is None:
                continue
            root, res = polished
            if (root.real > MARGINAL_TOL
                    and abs(root - base) > MERGE_TOL * (1.0 + abs(root))):
                return root, res
    return None


def _is_complex_root(z: complex) -> bool:
    return abs(z.imag) > 10.0 * MERGE_TOL * (1.0 + abs(z))


class _Track:
    __slots__ = ("seed", "points", "exceptional")

    def __init__(self, seed: complex):
        self.seed = complex(seed)
        self.points: Dict[float, BandPoint] = {}
        self.exceptional: List[float] = []


def _conjugate_pair_results(lat: LatticeParams, k: float, root: complex,
                            tracks: Sequence["_Track"]
                            ) -> List[Optional[Tuple[complex, float]]]:
    up = root if root.imag > 0 else root.conjugate()
    res_up = abs(quantization_residual(lat, up, k))
    res_dn = abs(quantization_residual(lat, up.conjugate(), k))
    if tracks[0].seed.imag >= tracks[1].seed.imag:
        return [(up, res_up), (up.conjugate(), res_dn)]
    return [(up.conjugate(), res_dn), (up, res_up)]


def _disentangle_pair(lat: LatticeParams, k: float, tracks: Sequence["_Track"],
                      results: List[Optional[Tuple[complex, float]]],
                      cfg: RootFindConfig) -> List[Optional[Tuple[complex, float]]]:
    """Repair a two-track step where both Newtons landed on one root.

    Real-coefficient symmetry supplies the conjugate partner of a complex
    root for free; for a real root the partner is recovered by deflation.
    A step with no recoverable partner is a genuine coalescence and is
    flagged as an exceptional point.
    """
    r0, r1 = results
    merged = (r0 is not None and r1 is not None
              and abs(r0[0] - r1[0]) < MERGE_TOL * (1.0 + abs(r0[0])))
    lost_one = (r0 is None) != (r1 is None)
    if not (merged or lost_one):
        return results
    base, base_res = r0 if r0 is not None else r1  # type: ignore[misc]
    if _is_complex_root(base):
        return _conjugate_pair_results(lat, k, base, tracks)
    partner = _second_root(lat, k, base, cfg)
    if partner is None:
        for tr in tracks:
            tr.exceptional.append(k)
        return [(base, base_res), (base, base_res)]
    proot, pres = partner
    if _is_complex_root(proot):
        return _conjugate_pair_results(lat, k, proot, tracks)
    s0, s1 = tracks[0].seed, tracks[1].seed
    if abs(base - s0) + abs(proot - s1) <= abs(proot - s0) + abs(base - s1):
        return [(base, base_res), (proot, pres)]
    return [(proot, pres), (base, base_res)]


def band_sweep(lat: LatticeParams, n_k: int = 201,
               k_grid: Optional[Sequence[float]] = None,
               cfg: Optional[RootFindConfig] = None) -> List[BandStructure]:
    """Track every isolated-limit band across the Brillouin zone.

    Roots are continued in k (each solution seeds its grid neighbor); when
    two tracks coalesce the merge point is flagged as exceptional and a
    conjugate-pair recovery kicks in, so sweeps follow PT bands through the
    real-to-complex transition.  For theta = 0 the condition is even in k and
    only distinct |k| values are solved.
    """
    p = lat.contact
    cfg = cfg or RootFindConfig()
    iso = bound_states(p).roots
    if not iso:
        return []
    if k_grid is None:
        k_grid = default_zone_grid(lat.ell, n_k)
    ks = [float(k) for k in k_grid]
    if len(ks) < 2:
        raise DomainError("band sweep needs at least two grid points")

    theta_free = abs(p.theta) <= 1e-15
    if theta_free:
        work: List[float] = sorted({round(abs(k), 15) for k in ks})
    else:
        work = sorted(ks, key=abs)

    tracks = [_Track(seed) for seed in iso]
    for k in work:
        results: List[Optional[Tuple[complex, float]]] = [
            _polish(lat, k, tr.seed, cfg) for tr in tracks
        ]
        if len(tracks) == 2:
            results = _disentangle_pair(lat, k, tracks, results, cfg)
        for tr, polished in zip(tracks, results):
            if polished is None:
                continue
            root, res = polished
            if root.real <= MARGINAL_TOL:
                continue
            was_complex = _is_complex_root(tr.seed)
            if tr.points and was_complex != _is_complex_root(root):
                tr.exceptional.append(k)  # real/complex transition between grid points
            tr.points[k] = BandPoint(k, root, res)
            tr.seed = root

    bands: List[BandStructure] = []
    for tr in tracks:
        pts: List[BandPoint] = []
        exceptional: List[float] = []
        for k in ks:
            key = round(abs(k), 15) if theta_free else k
            if key in tr.points:
                src = tr.points[key]
                pts.append(BandPoint(k, src.kappa, src.residual))
            if key in tr.exceptional:
                exceptional.append(k)
        pts.sort(key=lambda bp: bp.k)
        bands.append(BandStructure(tuple(pts), 0, Regime.UNCLASSIFIED,
                                   tuple(sorted(exceptional))))
    bands = [b for b in bands if b.points]
    bands.sort(key=lambda b: np.mean([bp.energy.real for bp in b.points]))
    regime = classify_regime(lat, bands) if bands else Regime.UNCLASSIFIED
    return [replace(b, band_index=i, regime=regime) for i, b in enumerate(bands)]


@dataclass(frozen=True)
class RegimeSummary:
    regime: Regime
    real_fraction: float
    min_gap: Optional[float]
    k_at_min_gap: Optional[float]


def _reference_kappa(lat: LatticeParams) -> float:
    p = lat.contact
    if p.cls is SymmetryClass.PT_SYMMETRIC and p.beta != 0.0:
        kbar = -p.alpha.real / p.beta
        if kbar > 0.0:
            return kbar
    roots = bound_states(p).roots
    if roots:
        return float(np.mean([abs(z.real) for z in roots]))
    return 1.0


def summarize_regime(lat: LatticeParams, bands: Sequence[BandStructure]) -> RegimeSummary:
    """Regime label plus the diagnostics behind it.

    The label comes from the sign pattern of Im E on the swept grid (with a
    relative threshold), not from the narrow-band criterion, so it remains
    meaningful away from the weak-coupling limit.
    """
    p = lat.contact
    kbar = _reference_kappa(lat)
    tol = 1e-9 * kbar * kbar
    if not bands:
        return RegimeSummary(Regime.UNCLASSIFIED, 0.0, None, None)

    by_k: Dict[float, List[BandPoint]] = {}
    for band in bands:
        for bp in band.points:
            by_k.setdefault(bp.k, []).append(bp)
    common = sorted(k for k, pts in by_k.items() if len(pts) == len(bands))
    if not common:
        return RegimeSummary(Regime.UNCLASSIFIED, 0.0, None, None)

    real_mask = {
        k: all(abs(bp.energy.imag) <= tol for bp in by_k[k]) for k in common
    }
    n_real = sum(real_mask.values())
    real_fraction = n_real / len(common)

    min_gap = k_min = None
    if len(bands) >= 2:
        for k in common:
            es = [bp.energy for bp in by_k[k]]
            gap = abs(es[0] - es[1])
            if min_gap is None or gap < min_gap:
                min_gap, k_min = gap, k
    if p.cls is SymmetryClass.HERMITIAN:
        if min_gap is not None and min_gap < 1e-6 * kbar * kbar:
            regime = Regime.HERMITIAN_DIRAC_CONE
        else:
            regime = Regime.HERMITIAN_GAPPED
        return RegimeSummary(regime, real_fraction, min_gap, k_min)

    if n_real == len(common):
        regime = Regime.REAL_BANDS
    elif n_real <= 2:
        regime = Regime.CONJUGATE_PAIR_BANDS
    else:
        center_k = min(common, key=abs)
        if real_mask[center_k]:
            if abs(p.alpha.imag) < 1.0:
                regime = Regime.PARTIAL_ONSET
            else:
                regime = Regime.PARTIAL_COMPLETION
        else:
            regime = Regime.UNCLASSIFIED
    return RegimeSummary(regime, real_fraction, min_gap, k_min)


def classify_regime(lat: LatticeParams, bands: Sequence[BandStructure]) -> Regime:
    return summarize_regime(lat, bands).regime


# ---------------------------------------------------------------------------
# narrow-band closed forms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PTNarrowBand:
    """Weak-coupling PT dispersion at one crystal momentum.

    delta_plus/minus are the band displacements of the decay rate about
    kappa_bar; w is the bandwidth scale sqrt(4 kappa_bar e^{-kappa_bar ell} / beta)
    and varepsilon the root half-splitting measured in units of w.
    """

    delta_plus: complex
    delta_minus: complex
    w: float
    varepsilon: float
    kappa_bar: float

    @property
    def e_plus(self) -> complex:
        return -0.5 * self.kappa_bar ** 2 - self.kappa_bar * self.delta_plus

    @property
    def e_minus(self) -> complex:
        return -0.5 * self.kappa_bar ** 2 - self.kappa_bar * self.delta_minus


def narrowband_displacements(w: float, varepsilon_sq: float, above: bool,
                             k: float, ell: float) -> Tuple[complex, complex]:
    """The +-W*sqrt(varepsilon^2 +- cos k ell) displacement pair.

    ``above`` selects the broken-side branch sqrt(cos k ell - varepsilon^2);
    a negative argument yields an exact conjugate (imaginary) pair.
    """
    c = math.cos(k * ell)
    arg = (c - varepsilon_sq) if above else (varepsilon_sq + c)
    if arg >= 0.0:
        d = complex(w * math.sqrt(arg), 0.0)
    else:
        d = complex(0.0, w * math.sqrt(-arg))
    return d, -d


def pt_narrowband(lat: LatticeParams, k: float) -> PTNarrowBand:
    """Evaluate the weak-coupling PT band formulas at crystal momentum k.

    Requires beta > 0 (the bandwidth scale is only defined there) and a
    positive kappa_bar = -Re(alpha)/beta; warns when e^{-kappa_bar ell} is not
    actually small.
    """
    p = lat.contact
    if p.cls is not SymmetryClass.PT_SYMMETRIC:
        raise DomainError("narrow-band PT formulas require the PT class")
    if p.beta <= 0.0:
        raise DomainError("bandwidth scale undefined for beta <= 0; use the exact solver")
    kbar = -p.alpha.real / p.beta
    if kbar <= 0.0:
        raise DomainError("requires kappa_bar = -Re(alpha)/beta > 0")
    damp = math.exp(-kbar * lat.ell)
    if damp > 0.05:
        warnings.warn("e^{-kappa_bar * ell} = %.3g: narrow-band formulas are "
                      "marginal here" % damp, stacklevel=2)
    a_im = p.alpha.imag
    w = math.sqrt(4.0 * kbar * damp / p.beta)
    eps_root = math.sqrt(abs(1.0 - a_im * a_im)) / p.beta
    vareps = eps_root / w
    above = abs(a_im) > 1.0
    dp, dm = narrowband_displacements(w, vareps * vareps, above, k, lat.ell)
    return PTNarrowBand(dp, dm, w, vareps, kbar)


def hermitian_narrowband(lat: LatticeParams, k: float) -> Tuple[float, float]:
    """Cosine dispersions (E1, E2) of two well-separated Hermitian bands.

    E1 belongs to the larger decay rate kappa1.  Requires two distinct
    positive isolated roots and beta != 0.
    """
    p = lat.contact
    if p.cls is not SymmetryClass.HERMITIAN:
        raise DomainError("hermitian narrow-band formulas require the hermitian class")
    if p.beta == 0.0:
        raise DomainError("two-band dispersion requires beta != 0")
    roots = bound_states(p).roots
    if len(roots) != 2:
        raise DomainError("requires exactly two isolated bound states")
    k1, k2 = roots[0].real, roots[1].real
    if abs(k1 - k2) < 1e-9 * (1.0 + abs(k1)):
        raise DomainError("degenerate roots: use the band-touching cone formulas")
    c = math.cos(k * lat.ell)
    amp1 = 4.0 * k1 * k1 / (p.beta * (k1 - k2)) * math.exp(-k1 * lat.ell)
    amp2 = 4.0 * k2 * k2 / (p.beta * (k1 - k2)) * math.exp(-k2 * lat.ell)
    return -0.5 * k1 * k1 - amp1 * c, -0.5 * k2 * k2 + amp2 * c


@dataclass(frozen=True)
class DiracConeParams:
    """Nearly-degenerate Hermitian band pair in rescaled variables.

    kappa_bar is the mean decay rate, epsilon the root half-gap, f the
    inverse-interaction scale 1/beta = f*epsilon (|f| <= 1 by the determinant
    constraint), varepsilon the half-gap in units of 2*kappa_bar*e^{-kappa_bar*ell}.
    """

    kappa_bar: float
    epsilon: float
    f: float
    varepsilon: float

    def __post_init__(self) -> None:
        if self.kappa_bar <= 0.0 or self.epsilon <= 0.0:
            raise DomainError("kappa_bar and epsilon must be positive")
        if abs(self.f) > 1.0 + 1e-12:
            raise DomainError("|f| <= 1 is required (root-gap constraint)")
        if self.varepsilon <= 0.0:
            raise DomainError("varepsilon must be positive")

    @classmethod
    def from_ell(cls, kappa_bar: float, epsilon: float, f: float,
                 ell: float) -> "DiracConeParams":
        vare = epsilon * math.exp(kappa_bar * ell) / (2.0 * kappa_bar)
        return cls(kappa_bar, epsilon, f, vare)

    @classmethod
    def from_roots(cls, beta: float, kappa1: float, kappa2: float,
                   ell: float) -> "DiracConeParams":
        if kappa1 <= kappa2:
            raise DomainError("requires kappa1 > kappa2")
        kbar = 0.5 * (kappa1 + kappa2)
        eps = 0.5 * (kappa1 - kappa2)
        return cls.from_ell(kbar, eps, 1.0 / (beta * eps), ell)


def dirac_cone_bands(d: DiracConeParams, ell: float, k: float
                     ) -> Tuple[float, float, float]:
    """(E_plus, E_minus, gap) of the nearly-degenerate band pair at k.

    The discriminant 1 + varepsilon^2 + 2 varepsilon f cos(k ell) equals
    (varepsilon - 1)^2 + 2 varepsilon (1 + f cos k ell) and cannot go
    negative for |f| <= 1.  E_plus carries the minus branch and is the lower
    band; the gap closes at k = 0 for (varepsilon, f) = (1, -1) and at the
    zone edge for (1, +1), linearly in k near the touch.
    """
    arg = 1.0 + d.varepsilon ** 2 + 2.0 * d.varepsilon * d.f * math.cos(k * ell)
    if arg < 0.0:
        if arg < -1e-12:
            raise ArithmeticError("band discriminant went negative: invalid parameters")
        arg = 0.0
    half = 2.0 * d.kappa_bar ** 2 * math.exp(-d.kappa_bar * ell) * math.sqrt(arg)
    center = -0.5 * d.kappa_bar ** 2
    return center - half, center + half, 2.0 * half


# ---------------------------------------------------------------------------
# independent transfer-matrix path (oracle)
# ---------------------------------------------------------------------------

def boundary_matrix(p: ContactParams) -> np.ndarray:
    """2x2 map of (psi, psi') across the interaction point."""
    ph = cmath.exp(1j * p.theta)
    return ph * np.array([[p.alpha, p.beta], [p.gamma, p.delta]], dtype=complex)


def propagation_matrix(kappa: complex, ell: float) -> np.ndarray:
    """Free evanescent propagation of (psi, psi') over one period."""
    kappa = complex(kappa)
    if kappa == 0:
        return np.array([[1.0, ell], [0.0, 1.0]], dtype=complex)
    ch = cmath.cosh(kappa * ell)
    sh = cmath.sinh(kappa * ell)
    return np.array([[ch, sh / kappa], [kappa * sh, ch]], dtype=complex)


def cell_matrix(lat: LatticeParams, kappa: complex) -> np.ndarray:
    """One-cell transfer matrix: boundary jump followed by free propagation."""
    return propagation_matrix(kappa, lat.ell) @ boundary_matrix(lat.contact)


def bloch_determinant(lat: LatticeParams, kappa: complex, k: float) -> complex:
    """det(M - e^{i k ell} I): zero exactly on band roots.

    Evaluated as mu^2 - mu*tr(M) + det(M) with det(M) = det(B), since the
    propagation factor has unit determinant by the hyperbolic identity; the
    expanded 2x2 determinant would lose ~e^{2 Re(kappa) ell} * eps to
    cancellation, swamping the oracle tolerance.
    """
    m = cell_matrix(lat, kappa)
    b = boundary_matrix(lat.contact)
    det_b = b[0, 0] * b[1, 1] - b[0, 1] * b[1, 0]
    mu = cmath.exp(1j * k * lat.ell)
    return mu * mu - mu * (m[0, 0] + m[1, 1]) + det_b
