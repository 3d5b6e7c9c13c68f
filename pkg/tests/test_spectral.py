import math

import numpy as np
import pytest
from scipy import integrate

from fracgaussiso.errors import DomainError
from fracgaussiso.gauss_core import hermite_eval, k_coefficient
from fracgaussiso.sets import GaussianSet, halfline, interval
from fracgaussiso.spectral import (asymptotic_limit, asymptotic_series_value,
                                   coeff_halfline, coeff_set, coeff_table,
                                   cylinder_perimeter_2d, halfspace_series,
                                   halfline_perimeter_reference,
                                   perimeter_spectral, spectral_coefficients)

SQRT_2PI = math.sqrt(2.0 * math.pi)


def _coeff_oracle(E, k):
    total = 0.0
    for a, b in E.intervals:
        val, _ = integrate.quad(
            lambda x: hermite_eval(k, x) * math.exp(-x * x / 2) / SQRT_2PI,
            a, b, limit=200)
        total += val
    return total


def test_halfline_coefficients_vs_quadrature():
    for r in (-0.7, 0.0, 1.3):
        E = halfline(r)
        for k in (0, 1, 2, 5, 9):
            assert coeff_halfline(r, k) == pytest.approx(_coeff_oracle(E, k), abs=1e-10)


def test_set_coefficients_vs_quadrature():
    E = GaussianSet.from_intervals([(-1.5, -0.2), (0.4, 1.1)])
    for k in (0, 1, 3, 7):
        assert coeff_set(E, k) == pytest.approx(_coeff_oracle(E, k), abs=1e-10)


def test_coeff_table_consistency():
    E = interval(0.0, 1.0)
    f = coeff_table(E, 50)
    for k in (0, 1, 10, 50):
        assert f[k] == pytest.approx(coeff_set(E, k), abs=1e-14)


def test_k1_summand_anchor():
    # first summand of the halfline series at r = 0 is exactly 1/(4 pi)
    pv = halfspace_series(0.0, 0.5, K=1, convention="remark")
    assert pv.value == pytest.approx(1.0 / (4.0 * math.pi), abs=1e-16)


def test_halfline_series_equals_spectral():
    for r in (0.0, 0.7):
        for conv in ("remark", "with_constant"):
            a = perimeter_spectral(halfline(r), 0.5, 20_000, conv).value
            b = halfspace_series(r, 0.5, 20_000, conv).value
            assert a == pytest.approx(b, abs=1e-12)


def test_convention_factor():
    E = interval(-0.5, 0.8)
    s = 0.3
    wc = perimeter_spectral(E, s, 2000, "with_constant").value
    rm = perimeter_spectral(E, s, 2000, "remark").value
    assert wc == pytest.approx(k_coefficient(s) * rm, rel=1e-13)


def test_unknown_convention():
    with pytest.raises(DomainError):
        perimeter_spectral(interval(0, 1), 0.5, 100, "banana")


def test_perimeter_reflection_invariance():
    E = GaussianSet.from_intervals([(-2.0, -0.5), (0.1, 0.6)])
    R = GaussianSet.from_intervals([(-0.6, -0.1), (0.5, 2.0)])
    a = perimeter_spectral(E, 0.5, 2000).value
    b = perimeter_spectral(R, 0.5, 2000).value
    assert a == pytest.approx(b, rel=1e-12)


def test_perimeter_complement_invariance():
    # f_k(E^c) = -f_k(E) for k >= 1, so the perimeter agrees
    E = interval(-0.4, 1.2)
    C = GaussianSet.from_intervals([(-math.inf, -0.4), (1.2, math.inf)])
    a = perimeter_spectral(E, 0.7, 2000).value
    b = perimeter_spectral(C, 0.7, 2000).value
    assert a == pytest.approx(b, rel=1e-12)


def test_perimeter_monotone_in_K():
    E = interval(0.0, 1.0)
    values = [perimeter_spectral(E, 0.5, K).value for K in (100, 1000, 5000)]
    assert values[0] < values[1] < values[2]


def test_tail_bound_covers_refinement():
    E = interval(0.0, 1.0)
    coarse = perimeter_spectral(E, 0.5, 2000)
    fine = perimeter_spectral(E, 0.5, 50_000)
    assert fine.value - coarse.value <= coarse.tail_bound


def test_cylinder_matches_1d():
    for s in (0.25, 0.5, 0.75):
        for E in (halfline(0.0), interval(0.0, 1.0)):
            p1 = perimeter_spectral(E, s, 1500).value
            p2 = cylinder_perimeter_2d(E, s, 1500).value
            assert p2 == pytest.approx(p1, abs=1e-12)


def test_asymptotic_limit_value():
    assert asymptotic_limit(0.0) == pytest.approx(0.12698727186848194, rel=1e-12)


def test_asymptotic_series_near_one():
    pv = asymptotic_series_value(0.0, 0.999, 50_000)
    scaled = (1.0 - 0.999) * pv.value
    assert scaled == pytest.approx(asymptotic_limit(0.0), rel=0.05)


def test_reference_beats_truncation():
    ref = halfline_perimeter_reference(0.0, 0.5, 200_000)
    trunc = perimeter_spectral(halfline(0.0), 0.5, 200_000)
    # truncation sits below; the completed reference above it but within tail
    assert trunc.value < ref.value < trunc.value + trunc.tail_bound


def test_spectral_coefficients_record():
    E = interval(0.0, 1.0)
    sc = spectral_coefficients(E, 64)
    assert sc.K == 64
    assert sc.f.shape == (65,)
    assert sc.set == E
