import cmath
import math

import numpy as np
import pytest

import contactbands as cb
from contactbands.errors import DomainError
from conftest import random_hermitian_lattice, random_pt_lattice


def two_state_lattice(ell=5.0):
    p = cb.from_root_parametrization(cb.RootParametrization(2.0, 3.0, 1.0))
    return cb.LatticeParams(p, ell)


def test_lattice_requires_positive_period():
    with pytest.raises(DomainError):
        cb.LatticeParams(cb.from_delta_strength(-1.0), 0.0)


def test_residual_vanishes_in_isolated_limit():
    lat = two_state_lattice(ell=50.0)
    res = cb.quantization_residual(lat, 3.0, 0.7)
    scale = abs(lat.contact.beta) * 9 + abs(lat.contact.trace) * 3 + abs(lat.contact.gamma)
    assert abs(res) < 1e-20 * scale


def test_residual_quarter_zone_reduction():
    # cos(k ell - theta) = 0 kills the single-exponential coupling term
    lat = two_state_lattice(ell=4.0)
    k = math.pi / (2.0 * lat.ell)
    kappa = 1.7 + 0.3j
    p = lat.contact
    e2 = cmath.exp(-2.0 * kappa * lat.ell)
    backward = p.beta * kappa ** 2 - p.trace * kappa + p.gamma
    forward = p.beta * kappa ** 2 + p.trace * kappa + p.gamma
    assert cb.quantization_residual(lat, kappa, k) == pytest.approx(
        forward - backward * e2, abs=1e-14)


def test_free_particle_has_no_bands():
    free = cb.trajectory_point(cb.TrajectoryParams(cb.TrajectoryKind.GAMMA_RAY), 0.0)
    lat = cb.LatticeParams(free, 3.0)
    assert cb.solve_band(lat, 0.4, seeds=[0.5, 1.0 + 0.2j]) == []
    assert cb.band_sweep(lat, n_k=11) == []


def test_solve_band_near_isolated_roots():
    lat = two_state_lattice(ell=5.0)
    pts = cb.solve_band(lat, 0.0)
    assert len(pts) == 2
    d1 = 4.0 * 3.0 / (2.0 * 2.0) * math.exp(-15.0)
    d2 = -4.0 * 1.0 / (2.0 * 2.0) * math.exp(-5.0)
    # upper band: weak-coupling displacement is essentially exact
    assert abs(pts[0].kappa - (3.0 + d1)) < 1e-8
    # lower band: first-order displacement good to the next correction O(l*e^{-2*l})
    assert abs(pts[1].kappa - (1.0 + d2)) < 5e-4
    for bp in pts:
        assert bp.residual < 1e-10


def test_solve_band_pt_conjugate_roots():
    p = cb.pt_from_alpha_beta(complex(-1.0, 1.2), 1.0)
    lat = cb.LatticeParams(p, 4.0)
    pts = cb.solve_band(lat, math.pi / (2.0 * lat.ell))
    assert len(pts) == 2
    assert pts[0].kappa.imag > 0 > pts[1].kappa.imag
    assert abs(pts[0].kappa - pts[1].kappa.conjugate()) < 1e-10
    for bp in pts:
        assert bp.residual < 1e-10


def test_solve_band_even_in_k_for_zero_phase():
    lat = two_state_lattice(ell=4.0)
    a = cb.solve_band(lat, 0.37)
    b = cb.solve_band(lat, -0.37)
    assert [bp.kappa for bp in a] == [bp.kappa for bp in b]


def test_band_sweep_residuals_and_oracle():
    lat = two_state_lattice(ell=4.0)
    bands = cb.band_sweep(lat, n_k=41)
    assert len(bands) == 2
    assert bands[0].band_index == 0
    for band in bands:
        assert len(band.points) == 41
        for bp in band.points:
            assert bp.residual < 1e-10
            assert abs(cb.bloch_determinant(lat, bp.kappa, bp.k)) < 1e-8


def test_transfer_matrix_oracle_random_lattices():
    rng = np.random.default_rng(51)
    for trial in range(10):
        lat = random_hermitian_lattice(rng) if trial % 2 == 0 else random_pt_lattice(rng)
        for band in cb.band_sweep(lat, n_k=21):
            for bp in band.points:
                assert abs(cb.bloch_determinant(lat, bp.kappa, bp.k)) < 1e-8


def test_isolated_limit_consistency():
    lat = two_state_lattice(ell=50.0)  # e^{-kappa ell} < 1e-21 for both roots
    for k in (0.0, 0.3, math.pi / lat.ell):
        pts = cb.solve_band(lat, k)
        assert abs(pts[0].kappa - 3.0) < 1e-12
        assert abs(pts[1].kappa - 1.0) < 1e-12


def test_narrowband_error_scaling():
    # displacement error of the first-order dispersion shrinks at least as
    # fast as e^{-kappa1 * ell}
    p = cb.from_root_parametrization(cb.RootParametrization(2.0, 1.5, 0.5))
    k1 = 1.5
    errs = []
    for ell in (4.0, 6.0, 8.0):
        lat = cb.LatticeParams(p, ell)
        pts = cb.solve_band(lat, 0.0)
        upper = pts[0].kappa.real
        d1 = 4.0 * k1 / (p.beta * 1.0) * math.exp(-k1 * ell)
        errs.append(abs(upper - (k1 + d1)))
    assert errs[1] <= errs[0] * math.exp(-2.0 * k1) * 2.0
    assert errs[2] <= errs[1] * math.exp(-2.0 * k1) * 2.0


def test_hermitian_narrowband_example():
    lat = two_state_lattice(ell=5.0)
    e1, e2 = cb.hermitian_narrowband(lat, 0.0)
    assert e1 == pytest.approx(-4.5 - 9.0 * math.exp(-15.0), abs=1e-15)
    assert e1 == pytest.approx(-4.500002753, abs=1e-9)
    assert e2 == pytest.approx(-0.5 + math.exp(-5.0), abs=1e-15)


def test_hermitian_narrowband_band_center():
    lat = two_state_lattice(ell=5.0)
    e1, _ = cb.hermitian_narrowband(lat, math.pi / (2.0 * lat.ell))
    assert e1 == pytest.approx(-4.5, abs=1e-15)


def test_hermitian_narrowband_bandwidth_ratio():
    lat = two_state_lattice(ell=5.0)
    e1_0, e2_0 = cb.hermitian_narrowband(lat, 0.0)
    e1_pi, e2_pi = cb.hermitian_narrowband(lat, math.pi / lat.ell)
    width1, width2 = abs(e1_pi - e1_0), abs(e2_pi - e2_0)
    expected = (9.0 / 1.0) * math.exp(-(3.0 - 1.0) * lat.ell)
    assert width1 / width2 == pytest.approx(expected, rel=1e-12)


def test_hermitian_narrowband_agreement_with_exact():
    # band-edge displacements from the exact roots vs the cosine dispersions
    for ell, bound in ((5.0, 0.05), (10.0, 0.001)):
        lat = two_state_lattice(ell)
        for k in (0.0, math.pi / ell):
            e1a, e2a = cb.hermitian_narrowband(lat, k)
            pts = cb.solve_band(lat, k)
            for bp, (center, approx) in zip(pts, ((-4.5, e1a), (-0.5, e2a))):
                exact_disp = bp.energy.real - center
                approx_disp = approx - center
                assert abs(approx_disp - exact_disp) < bound * abs(exact_disp)


def test_hermitian_narrowband_domain_errors():
    lat = cb.LatticeParams(cb.from_delta_strength(-1.0), 5.0)
    with pytest.raises(DomainError):
        cb.hermitian_narrowband(lat, 0.0)  # beta = 0, single state
    p = cb.pt_from_alpha_beta(complex(-1.0, 0.5), 1.0)
    with pytest.raises(DomainError):
        cb.hermitian_narrowband(cb.LatticeParams(p, 5.0), 0.0)


# --- PT narrow-band formulas -------------------------------------------------

def test_narrowband_displacements_all_real_case():
    for k in np.linspace(-math.pi, math.pi, 41):
        dp, dm = cb.narrowband_displacements(1.0, 1.2, False, float(k), 1.0)
        assert dp.imag == 0.0 and dm.imag == 0.0
        assert dp == pytest.approx(math.sqrt(1.2 + math.cos(k)), abs=1e-14)
        assert dm == -dp


def test_narrowband_displacements_partial_case():
    # real exactly where cos(k ell) >= -varepsilon^2
    kc = math.acos(-0.5)
    dp_in, _ = cb.narrowband_displacements(1.0, 0.5, False, kc - 1e-3, 1.0)
    dp_out, dm_out = cb.narrowband_displacements(1.0, 0.5, False, kc + 1e-3, 1.0)
    assert dp_in.imag == 0.0
    assert dp_out.real == 0.0 and dp_out.imag > 0.0
    assert dm_out == dp_out.conjugate() * (-1.0) or dm_out == -dp_out


def test_narrowband_displacements_fully_broken_case():
    for k in np.linspace(-math.pi, math.pi, 41):
        dp, dm = cb.narrowband_displacements(1.0, 1.2, True, float(k), 1.0)
        assert dp.real == 0.0 and dm.real == 0.0
        assert dp.imag == pytest.approx(math.sqrt(1.2 - math.cos(k)), abs=1e-14)


def test_particle_hole_symmetry_of_formula():
    # displacement pair is exactly opposite: E+ + E- + kappa_bar^2 = 0
    for k in np.linspace(-math.pi, math.pi, 21):
        dp, dm = cb.narrowband_displacements(0.7, 0.9, False, float(k), 1.0)
        assert dp + dm == 0


def test_pt_narrowband_identities():
    a_im = 0.999
    p = cb.pt_from_alpha_beta(complex(-1.0, a_im), 1.0)
    lat = cb.LatticeParams(p, 12.0)
    nb = cb.pt_narrowband(lat, 0.3)
    assert nb.kappa_bar == pytest.approx(1.0)
    assert nb.w == pytest.approx(math.sqrt(4.0 * math.exp(-12.0)), rel=1e-12)
    # w * varepsilon recovers the isolated-root half-splitting
    assert nb.w * nb.varepsilon == pytest.approx(math.sqrt(1.0 - a_im ** 2), rel=1e-12)
    assert nb.e_plus == pytest.approx(-0.5 - nb.delta_plus, rel=1e-12)
    assert nb.delta_minus == -nb.delta_plus


def test_pt_narrowband_guards():
    p = cb.pt_from_alpha_beta(complex(-1.0, 0.9), -1.0)  # beta < 0
    with pytest.raises(DomainError):
        cb.pt_narrowband(cb.LatticeParams(p, 8.0), 0.0)
    q = cb.pt_from_alpha_beta(complex(-1.0, 0.9), 1.0)
    with pytest.warns(UserWarning):
        cb.pt_narrowband(cb.LatticeParams(q, 1.0), 0.0)  # e^{-kl} not small


# --- band-touching cone -------------------------------------------------------

def test_cone_touch_at_zone_center():
    d = cb.DiracConeParams(kappa_bar=2.0, epsilon=1e-4, f=-1.0, varepsilon=1.0)
    ep, em, gap = cb.dirac_cone_bands(d, 5.0, 0.0)
    assert gap < 1e-12
    assert ep == pytest.approx(-2.0, abs=1e-12)
    assert em == pytest.approx(-2.0, abs=1e-12)


def test_cone_linear_gap_growth():
    d = cb.DiracConeParams(kappa_bar=2.0, epsilon=1e-4, f=-1.0, varepsilon=1.0)
    ell = 5.0
    for k in (1e-3, 5e-3, 2e-2):
        _, _, gap = cb.dirac_cone_bands(d, ell, k)
        expected = 4.0 * 4.0 * math.exp(-10.0) * math.sqrt(2.0 - 2.0 * math.cos(k * ell))
        assert gap == pytest.approx(expected, rel=1e-12)
        # linear to O((k ell)^2 / 24)
        assert gap == pytest.approx(16.0 * math.exp(-10.0) * ell * k,
                                    rel=max(1e-6, (k * ell) ** 2 / 20.0))


def test_cone_flat_gap_at_f_zero():
    d = cb.DiracConeParams(kappa_bar=2.0, epsilon=1e-4, f=0.0, varepsilon=1.0)
    gaps = [cb.dirac_cone_bands(d, 5.0, k)[2] for k in np.linspace(0, math.pi / 5, 11)]
    expected = 16.0 * math.exp(-10.0) * math.sqrt(2.0)
    assert all(g == pytest.approx(expected, rel=1e-12) for g in gaps)


def test_cone_touch_criterion():
    ell = 5.0
    d_edge = cb.DiracConeParams(2.0, 1e-4, +1.0, 1.0)
    assert cb.dirac_cone_bands(d_edge, ell, math.pi / ell)[2] < 1e-12
    assert cb.dirac_cone_bands(d_edge, ell, 0.0)[2] > 1e-6
    detuned = cb.DiracConeParams(2.0, 1e-4, -1.0, 1.05)
    assert cb.dirac_cone_bands(detuned, ell, 0.0)[2] > 1e-6


def test_cone_params_validation():
    with pytest.raises(DomainError):
        cb.DiracConeParams(2.0, 1e-4, 1.5, 1.0)
    with pytest.raises(DomainError):
        cb.DiracConeParams(-1.0, 1e-4, 0.5, 1.0)
    d = cb.DiracConeParams.from_roots(beta=-1.0 / 1e-4, kappa1=2.0 + 1e-4,
                                      kappa2=2.0 - 1e-4, ell=5.0)
    assert d.f == pytest.approx(-1.0)
    assert d.varepsilon == pytest.approx(1e-4 * math.exp(10.0) / 4.0, rel=1e-12)


def test_from_ell_consistency():
    d = cb.DiracConeParams.from_ell(2.0, 3e-4, 0.5, 5.0)
    assert d.varepsilon == pytest.approx(3e-4 * math.exp(10.0) / 4.0, rel=1e-12)


# --- regimes -----------------------------------------------------------------

def _regime_lattice(varepsilon_sq, above, kbar=1.0, beta=1.0, ell=12.0):
    w = math.sqrt(4.0 * kbar * math.exp(-kbar * ell) / beta)
    eps_root = w * math.sqrt(varepsilon_sq)
    a_im = math.sqrt(1.0 + eps_root ** 2) if above else math.sqrt(1.0 - eps_root ** 2)
    p = cb.pt_from_alpha_beta(complex(-kbar * beta, a_im), beta)
    return cb.LatticeParams(p, ell)


def test_regime_real_bands():
    lat = _regime_lattice(1.2, above=False)
    bands = cb.band_sweep(lat, n_k=51)
    summary = cb.summarize_regime(lat, bands)
    assert summary.regime is cb.Regime.REAL_BANDS
    assert summary.real_fraction == 1.0
    assert max(abs(bp.energy.imag) for b in bands for bp in b.points) < 1e-10


def test_regime_conjugate_pair_bands():
    lat = _regime_lattice(1.2, above=True)
    bands = cb.band_sweep(lat, n_k=51)
    summary = cb.summarize_regime(lat, bands)
    assert summary.regime is cb.Regime.CONJUGATE_PAIR_BANDS
    assert summary.real_fraction == 0.0


def test_regime_partial_onset_with_fraction():
    lat = _regime_lattice(0.5, above=False)
    bands = cb.band_sweep(lat, n_k=201)
    summary = cb.summarize_regime(lat, bands)
    assert summary.regime is cb.Regime.PARTIAL_ONSET
    assert abs(summary.real_fraction - 2.0 / 3.0) <= 1.5 / 201
    assert all(b.exceptional_ks for b in bands)  # the transition is flagged


def test_regime_partial_completion():
    lat = _regime_lattice(0.5, above=True)
    bands = cb.band_sweep(lat, n_k=201)
    summary = cb.summarize_regime(lat, bands)
    assert summary.regime is cb.Regime.PARTIAL_COMPLETION
    assert abs(summary.real_fraction - 1.0 / 3.0) <= 1.5 / 201


def test_regime_hermitian_labels():
    lat = two_state_lattice(ell=4.0)
    bands = cb.band_sweep(lat, n_k=41)
    assert bands[0].regime is cb.Regime.HERMITIAN_GAPPED
    kbar, ell = 2.0, 5.0
    epsg = 2.0 * kbar * math.exp(-kbar * ell)
    p = cb.from_root_parametrization(
        cb.RootParametrization(-1.0 / epsg, kbar + epsg, kbar - epsg))
    cone = cb.LatticeParams(p, ell)
    bands = cb.band_sweep(cone, k_grid=np.linspace(0.0, math.pi / ell, 101))
    assert bands[0].regime is cb.Regime.HERMITIAN_DIRAC_CONE


def test_pt_sweep_conjugation_closure():
    lat = _regime_lattice(0.5, above=False)
    bands = cb.band_sweep(lat, n_k=101)
    by_k = {}
    for band in bands:
        for bp in band.points:
            by_k.setdefault(bp.k, []).append(bp.kappa)
    for roots in by_k.values():
        orig = sorted(roots, key=lambda z: (z.real, z.imag))
        conj = sorted((z.conjugate() for z in roots), key=lambda z: (z.real, z.imag))
        for a, b in zip(orig, conj):
            assert abs(a - b) < 1e-10 * (1.0 + abs(a))


def test_fold_to_zone():
    ell = 2.0
    assert cb.fold_to_zone(math.pi / ell, ell) == pytest.approx(math.pi / ell)
    assert cb.fold_to_zone(-math.pi / ell, ell) == pytest.approx(math.pi / ell)
    assert cb.fold_to_zone(2.5 * math.pi / ell, ell) == pytest.approx(0.5 * math.pi / ell)


def test_default_zone_grid():
    grid = cb.default_zone_grid(2.0, 8)
    assert len(grid) == 8
    assert grid[-1] == pytest.approx(math.pi / 2.0)
    assert grid[0] > -math.pi / 2.0
