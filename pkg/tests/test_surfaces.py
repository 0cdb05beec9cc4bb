import math

import numpy as np
import pytest

from striplab import (Eigenmode, GeodesicState, SurfaceModel,
                      annulus_lattice_points, evaluate_mode,
                      make_torus_mode, sample_random_wave,
                      sphere_equator_spectrum, torus_geodesic)
from striplab.errors import EmptyWindow, OrderOutOfRange, SurfaceMismatch
from striplab.surfaces import TORUS_SIDE, TORUS_VOLUME


def test_torus_geodesic_period_and_direction():
    st = torus_geodesic((3, 4), (0.1, 0.2))
    assert st.period == pytest.approx(TORUS_SIDE * 5.0)
    assert st.q == (3, 4)
    assert math.hypot(*st.xi) == pytest.approx(1.0)


def test_torus_geodesic_rejects_non_primitive():
    with pytest.raises(ValueError):
        torus_geodesic((2, 4))


def test_geodesic_state_rejects_non_unit_direction():
    with pytest.raises(ValueError):
        GeodesicState((0.0, 0.0), (1.0, 1.0))


def test_advance_wraps_basepoint():
    st = torus_geodesic((1, 0))
    moved = st.advance(TORUS_SIDE + 1.0)
    assert moved.x[0] == pytest.approx(1.0)
    assert moved.period == st.period


def test_annulus_lattice_points_brute_force():
    # the set for lam=5, delta=0.5 from the defining inequality
    lam, delta = 5.0, 0.5
    expected = {(a, b) for a in range(-6, 7) for b in range(-6, 7)
                if (lam - delta) ** 2 <= a * a + b * b <= (lam + delta) ** 2}
    assert set(annulus_lattice_points(lam, delta)) == expected


def test_annulus_empty_window_raises():
    with pytest.raises(EmptyWindow):
        sample_random_wave(5.5, 0.01, 0)   # no integer n^2 in [30.14, 30.36]


def test_random_wave_is_deterministic_and_normalized():
    a = sample_random_wave(30.0, 1.0, 7)
    b = sample_random_wave(30.0, 1.0, 7)
    assert a.terms == b.terms
    assert a.normalization == pytest.approx(1.0, abs=1e-12)
    assert a.is_real
    c = sample_random_wave(30.0, 1.0, 8)
    assert c.terms != a.terms


def test_random_wave_real_valued_on_grid():
    mode = sample_random_wave(12.0, 0.5, 3)
    xs = np.linspace(0, TORUS_SIDE, 17)
    vals = np.array([evaluate_mode(mode, (x, 0.3 * x)) for x in xs])
    assert np.max(np.abs(vals.imag)) < 1e-12


def test_mode_json_round_trip():
    mode = sample_random_wave(10.0, 0.5, 1)
    back = Eigenmode.from_json(mode.to_json())
    assert back.lam == mode.lam
    assert back.terms == mode.terms
    assert back.seed == mode.seed


def test_single_mode_evaluation():
    mode = make_torus_mode((2, -1), 0.5j)
    val = evaluate_mode(mode, (0.3, 0.7))
    assert val == pytest.approx(0.5j * np.exp(1j * (2 * 0.3 - 0.7)))
    assert mode.lam == pytest.approx(math.sqrt(5))


def test_sphere_mode_rejects_torus_evaluation():
    sphere = SurfaceModel("SphereEquator", degree=4, order=2)
    mode = Eigenmode(sphere, 4.0, (((0, 0), 1.0 + 0j),))
    with pytest.raises(SurfaceMismatch):
        evaluate_mode(mode, (0.0, 0.0))


def test_surface_model_validation():
    with pytest.raises(ValueError):
        SurfaceModel("Klein")
    with pytest.raises(ValueError):
        SurfaceModel("PerturbedTorus", perturbation=(((1, 0), 0.7, 0.0),
                                                     ((0, 1), 0.5, 0.0)))
    with pytest.raises(OrderOutOfRange):
        SurfaceModel("SphereEquator", degree=2, order=5)


def test_conformal_factor_accepts_complex_points():
    surf = SurfaceModel("PerturbedTorus", perturbation=(((1, 0), 0.05, 0.0),))
    z = np.array([0.3 + 0.1j, 0.4 - 0.2j])
    a = surf.conformal_factor(z)
    assert a == pytest.approx(0.05 * np.cos(0.3 + 0.1j))
    g = surf.conformal_gradient(z)
    assert g[0] == pytest.approx(-0.05 * np.sin(0.3 + 0.1j))
    assert g[1] == 0.0


def test_equator_spectrum_against_scipy_legendre():
    from scipy.special import lpmv
    for l, m in [(2, 2), (6, 0), (11, 5), (40, 18), (51, 51)]:
        spec = sphere_equator_spectrum(l, m)
        norm = math.sqrt((2 * l + 1) / (4 * math.pi)
                         * math.exp(math.lgamma(l - m + 1)
                                    - math.lgamma(l + m + 1)))
        ref = norm * lpmv(m, l, 0.0)
        got = spec.entries.get(m, 0.0)
        assert got == pytest.approx(ref, abs=1e-12, rel=1e-10), (l, m)


def test_equator_spectrum_parity_zero():
    spec = sphere_equator_spectrum(9, 4)   # l - m odd: restriction vanishes
    assert spec.entries == {}


def test_equator_spectrum_order_out_of_range():
    with pytest.raises(OrderOutOfRange):
        sphere_equator_spectrum(3, 5)


def test_volume_constant():
    assert TORUS_VOLUME == pytest.approx((2 * np.pi) ** 2)
