import math

import mpmath as mp
import pytest

from fracgaussiso.errors import DegenerateSetError, DomainError
from fracgaussiso.inequality import (ConstantParams, TRANSFER_FAILS,
                                     TRANSFER_HOLDS, TRANSFER_INAPPLICABLE,
                                     TRANSFER_TRIVIAL, constant_C, f_weight,
                                     sigma_min, verify_levelset_bounds,
                                     verify_levelset_closeness, verify_main,
                                     verify_transfer_lemma, z_thresholds)
from fracgaussiso.gauss_core import iso_function
from fracgaussiso.sets import (EMPTY, GaussianSet, complement, halfline,
                               interval, symm_diff)
from fracgaussiso.spectral import perimeter_spectral


def test_sigma_min_endpoints():
    # interval entirely left of 1/2: left endpoint wins
    assert sigma_min(0.2) == pytest.approx(iso_function(0.2 / 9 * 5), rel=1e-12)
    # straddling 1/2: direct comparison of the two endpoints
    m = 0.45
    assert sigma_min(m) == min(iso_function(5 * m / 9), iso_function(13 * m / 9))
    # interior values dominate the interval minimum
    assert sigma_min(0.3) <= iso_function(0.3)


def test_sigma_min_domain():
    with pytest.raises(DomainError):
        sigma_min(9.0 / 13.0)
    with pytest.raises(DomainError):
        sigma_min(0.0)


def test_f_weight():
    assert f_weight(0.5) == 1.0
    for m in (0.1, 0.27, 0.44):
        assert f_weight(m) == pytest.approx(f_weight(1.0 - m), rel=1e-12)
    grid = [i / 100.0 for i in range(1, 100)]
    assert min(f_weight(m) for m in grid) >= math.sqrt(math.e) / 2.0


def test_z_thresholds():
    E = GaussianSet.from_intervals([(-math.inf, -0.1), (0.2, 0.5)])
    s = 0.5
    P_E = perimeter_spectral(E, s, 2000)
    H = halfline(0.0)
    P_H = perimeter_spectral(H, s, 2000)
    thr = z_thresholds(E, s, P_E, P_H)
    assert thr.z0 > 0.0 and thr.z1 > 0.0
    assert not thr.degenerate
    if P_E.value <= 2.0 * P_H.value:
        assert thr.z1 < thr.z0
    z0, z1 = thr
    assert (z0, z1) == (thr.z0, thr.z1)


def test_z_thresholds_degenerate():
    E = halfline(0.7)
    P = perimeter_spectral(E, 0.5, 500)
    thr = z_thresholds(E, 0.5, P, P)
    assert thr.degenerate and thr.z0 == 0.0 and thr.z1 == 0.0


def test_constant_C_positive_and_linear_in_c():
    P_H = perimeter_spectral(halfline(0.0), 0.5, 2000)
    c1 = constant_C(0.5, 0.3, ConstantParams(1.0), P_H)
    c2 = constant_C(0.5, 0.3, ConstantParams(2.0), P_H)
    assert c1 > 0.0
    assert c2 == pytest.approx(c1 / 2.0, rel=1e-14)


def test_constant_C_golden():
    # dual transcription: frozen literal plus an independent mpmath evaluation
    P_H = perimeter_spectral(halfline(0.0), 0.5, 10_000)
    val = constant_C(0.5, 0.5, ConstantParams(), P_H)
    assert val == pytest.approx(3.4391354482574013e-07, rel=1e-12)
    mp.mp.dps = 40
    s = mp.mpf("0.5")
    m = mp.mpf("0.5")

    def iso(mm):
        r = mp.sqrt(2) * mp.erfinv(2 * mm - 1)
        return mp.e ** (-r ** 2 / 2)

    sig = min(iso(5 * m / 9), iso(13 * m / 9))
    Ka = s * abs(mp.gamma(-s / 2)) / (2 ** s * mp.gamma(s / 2))
    beta = mp.gamma(1 - s / 2) / (2 ** s * Ka * mp.gamma(1 + s / 2))
    C = (mp.mpf(3) ** (4 - 4 / s) * 25 / 169) * mp.mpf("0.5") ** (8 / s + 2) \
        * (mp.sqrt(mp.e) / (2 - s)) * sig * m ** (2 / s - 2) \
        / (beta * mp.mpf(repr(P_H.value))) ** (2 / s - 1)
    assert val == pytest.approx(float(C), rel=1e-12)


def test_constant_C_needs_small_m():
    P_H = perimeter_spectral(halfline(0.0), 0.5, 500)
    with pytest.raises(DomainError):
        constant_C(0.5, 0.7, ConstantParams(), P_H)


def test_constant_params_validation():
    with pytest.raises(DomainError):
        ConstantParams(0.0)


def test_verify_main_halfline_trivial():
    rep = verify_main(halfline(0.3), 0.5, K=2000)
    assert abs(rep.deficit) < 1e-12
    assert rep.rhs < 1e-12
    assert rep.satisfied


def test_verify_main_complement_invariance():
    E = GaussianSet.from_intervals([(-math.inf, -0.05), (0.1, 0.4)])
    a = verify_main(E, 0.5, K=2000)
    b = verify_main(complement(E), 0.5, K=2000)
    assert a.deficit == pytest.approx(b.deficit, abs=1e-13)
    assert a.asym == pytest.approx(b.asym, abs=1e-13)
    assert a.satisfied and b.satisfied


def test_verify_main_branch_consistency():
    E = GaussianSet.from_intervals([(-math.inf, -0.05), (0.1, 0.4)])
    rep = verify_main(E, 0.5, K=2000)
    assert rep.branch in ("main", "large_perimeter")
    if rep.branch == "large_perimeter":
        expect = rep.P_H.value / 2.0 ** (2.0 / 0.5) * rep.asym ** (2.0 / 0.5)
    else:
        expect = constant_C(0.5, min(rep.m, 1 - rep.m), ConstantParams(),
                            rep.P_H) * rep.asym ** (2.0 / 0.5)
    assert rep.rhs == pytest.approx(expect, rel=1e-12)


def test_verify_main_degenerate():
    with pytest.raises(DegenerateSetError):
        verify_main(EMPTY, 0.5)


def test_transfer_lemma_identity():
    E = interval(0.0, 1.0)
    assert verify_transfer_lemma(E, E, 0.2) == TRANSFER_HOLDS


def test_transfer_lemma_trivial_for_halfline():
    assert verify_transfer_lemma(interval(0.0, 1.0), halfline(0.0), 0.2) \
        == TRANSFER_TRIVIAL


def test_transfer_lemma_inapplicable():
    F = interval(0.0, 1.0)
    E = interval(1.5, 2.5)  # huge symmetric difference
    assert verify_transfer_lemma(E, F, 0.1) == TRANSFER_INAPPLICABLE


def test_transfer_lemma_perturbation():
    F = GaussianSet.from_intervals([(-1.0, -0.2), (0.3, 0.9)])
    E = symm_diff(F, interval(0.0, 0.01))
    out = verify_transfer_lemma(E, F, 0.3)
    assert out in (TRANSFER_HOLDS, TRANSFER_INAPPLICABLE)
    assert out != TRANSFER_FAILS


def test_transfer_lemma_kappa_domain():
    with pytest.raises(DomainError):
        verify_transfer_lemma(interval(0, 1), interval(0, 1), 0.6)


def test_levelset_closeness_cases():
    E = interval(0.1, 1.2)
    s = 0.5
    alpha = 20.0
    from fracgaussiso.inequality import closeness_z_max
    z = 0.9 * closeness_z_max(E, s, alpha, 2000)
    for t in (0.25, 0.75):
        assert verify_levelset_closeness(E, s, t, z, alpha, 2000)


def test_levelset_closeness_precondition():
    with pytest.raises(DomainError):
        verify_levelset_closeness(interval(0, 1), 0.5, 0.1, 0.01, 20.0, 500)


def test_levelset_bounds_case():
    E = GaussianSet.from_intervals([(-math.inf, -0.3), (0.0, 0.25)])
    s = 0.5
    H = halfline(0.0)
    from fracgaussiso.sets import ehrhard_symmetrize
    thr = z_thresholds(E, s, perimeter_spectral(E, s, 2000),
                       perimeter_spectral(ehrhard_symmetrize(E).as_set(), s, 2000))
    assert verify_levelset_bounds(E, s, 0.5, thr.z0 / 2.0, 2000)
    # sandwich (5/9) m < mu < (13/9) m on the same configuration
    from fracgaussiso.extension import extension_field, level_set
    from fracgaussiso.sets import measure
    rec = level_set(extension_field(E, s, 2000), 0.5, thr.z0 / 2.0)
    m = measure(E)
    assert 5.0 / 9.0 * m < rec.mu < 13.0 / 9.0 * m


def test_levelset_bounds_vacuous_for_halfline():
    assert verify_levelset_bounds(halfline(0.0), 0.5, 0.5, 0.1, 500)
