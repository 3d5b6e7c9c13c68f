import math

import numpy as np
import pytest

from fracgaussiso.errors import DomainError
from fracgaussiso.extension import (SubordinationProfile, boundary_flux_check,
                                    boundary_flux_richardson,
                                    evaluate_extension, extension_field,
                                    level_set, level_set_with_budget,
                                    mehler_extension, mehler_semigroup,
                                    profile_psi, psi_bulk, trace_gap)
from fracgaussiso.gauss_core import beta_coefficient, k_coefficient
from fracgaussiso.sets import GaussianSet, halfline, interval, measure, symm_diff


def test_psi_half_is_exponential():
    for xi in (0.01, 0.1, 1.0, 4.0, 10.0):
        assert profile_psi(0.5, xi) == pytest.approx(math.exp(-xi), abs=1e-9)
        assert psi_bulk(0.5, np.array([xi]))[0] == pytest.approx(math.exp(-xi), abs=1e-11)


def test_psi_at_zero():
    for i in range(1, 21):
        sigma = i / 21.0
        assert profile_psi(sigma, 0.0) == 1.0
        assert psi_bulk(sigma, np.array([0.0]))[0] == 1.0


def test_psi_bulk_matches_quadrature():
    for sigma in (0.2, 0.5, 0.85):
        for xi in (0.05, 0.7, 3.0):
            assert psi_bulk(sigma, np.array([xi]))[0] == pytest.approx(
                profile_psi(sigma, xi), rel=1e-9)


def test_psi_monotone_decreasing():
    prof = SubordinationProfile(0.3)
    xi = np.linspace(0.0, 5.0, 50)
    vals = prof.psi(xi)
    assert np.all(np.diff(vals) < 0.0)
    assert np.all(vals > 0.0)


def test_psi_domain():
    with pytest.raises(DomainError):
        profile_psi(1.5, 1.0)
    with pytest.raises(DomainError):
        profile_psi(0.5, -1.0)


def test_boundary_flux_limit():
    for sigma in (0.25, 0.5, 0.75):
        for k in (1, 2, 5, 10):
            flux, exact = boundary_flux_richardson(sigma, k)
            assert flux == pytest.approx(exact, rel=0.01)
            assert exact == pytest.approx(k_coefficient(2 * sigma) * k ** sigma, rel=1e-12)


def test_boundary_flux_zero_mode():
    assert boundary_flux_check(0.5, 0, 0.01) == (0.0, 0.0)


def test_trace_gap_bound():
    sets = [halfline(0.0), interval(0.0, 1.0),
            GaussianSet.from_intervals([(-1.0, -0.2), (0.5, math.inf)])]
    from fracgaussiso.spectral import perimeter_spectral
    for E in sets:
        for s in (0.25, 0.5, 0.75):
            P = perimeter_spectral(E, s, 2000).value
            for z in np.geomspace(1e-3, 10.0, 9):
                gap = trace_gap(E, s, float(z), 2000)
                assert gap <= 2.0 * beta_coefficient(s) * z ** s * P * (1 + 1e-12)


def test_trace_gap_vanishes_as_z_to_zero():
    E = interval(0.0, 1.0)
    g1 = trace_gap(E, 0.5, 1e-4, 2000)
    g2 = trace_gap(E, 0.5, 1e-2, 2000)
    assert 0.0 < g1 < g2


def test_extension_boundary_values():
    # z -> 0 recovers the trace on the interior of E
    E = interval(-0.5, 0.5)
    F = extension_field(E, 0.5, 4000)
    # truncation at K = 4000 leaves ~2% near the trace; Mehler is exact there
    assert evaluate_extension(F, 0.0, 1e-5) == pytest.approx(1.0, abs=0.03)
    assert evaluate_extension(F, 3.0, 1e-5) == pytest.approx(0.0, abs=0.03)


def test_mehler_semigroup_mass_conservation():
    E = interval(-0.3, 1.1)
    x = np.linspace(-6, 6, 2001)
    for tau in (0.01, 0.5, 3.0):
        vals = mehler_semigroup(E, tau, x)
        assert np.all(vals >= 0.0) and np.all(vals <= 1.0)
    # long time: P_tau chi_E -> gamma(E) everywhere
    far = mehler_semigroup(E, 50.0, np.array([0.0, 2.0]))
    assert np.allclose(far, measure(E), atol=1e-10)


def test_mehler_matches_series():
    # closed-form subordinated semigroup vs truncated Hermite series
    E = interval(0.1, 1.2)
    F = extension_field(E, 0.5, 10_000)
    xs = np.linspace(-2.0, 3.0, 21)
    for z in (0.5, 1.0):
        a = evaluate_extension(F, xs, z)
        b = mehler_extension(E, 0.25, xs, z)
        assert np.max(np.abs(a - b)) < 5e-3


def test_level_set_recovers_set_at_small_z():
    E = interval(0.1, 1.2)
    F = extension_field(E, 0.5, 2000)
    rec, budget = level_set_with_budget(F, 0.5, 1e-4)
    assert measure(symm_diff(rec.set, E)) < 1e-3
    assert budget < 1e-4
    assert rec.mu == pytest.approx(measure(E), abs=1e-3)


def test_level_set_shrinks_with_t():
    E = interval(-0.5, 0.5)
    F = extension_field(E, 0.5, 2000)
    z = 0.05
    mus = [level_set(F, t, z).mu for t in (0.25, 0.5, 0.75)]
    assert mus[0] >= mus[1] >= mus[2]


def test_level_set_degenerate_t():
    E = interval(0.0, 1.0)
    F = extension_field(E, 0.5, 500)
    rec = level_set(F, 1.0, 0.1)
    assert rec.mu == 0.0
    with pytest.raises(DomainError):
        level_set(F, 0.5, 0.0)
