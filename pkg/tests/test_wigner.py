import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from striplab import (BandCutoff, GaussianSymbol, HannSymbol, Interval,
                      OrbitalSpectrum, SymbolDescriptor,
                      chebyshev_density_filter, moving_pullback,
                      normalized_pullback, qer_matrix_element,
                      sample_random_wave, sample_restriction,
                      torus_geodesic, translation_invariance_stat,
                      wigner_pairing)
from striplab.errors import (NonSeparableSymbol, SupportLeak,
                             VanishingRestriction)
from striplab.fourier import exact_restriction_spectrum

L = 2 * np.pi


def _spec(seed=0, lam=40.0, q=(1, 1)):
    mode = sample_random_wave(lam, 1.0, seed)
    return exact_restriction_spectrum(mode, torus_geodesic(q))


def test_pullback_has_unit_mass():
    spec = _spec()
    dens = normalized_pullback(spec, 0.1, Interval(0.0, spec.period))
    assert dens.integral() == pytest.approx(1.0, abs=1e-12)
    assert dens.certificate > 0


def test_vanishing_restriction_raises():
    spec = OrbitalSpectrum(5.0, L, {3: 0.0 + 1e-17j})
    with pytest.raises(VanishingRestriction):
        normalized_pullback(spec, 0.0, Interval(0.0, L))


def test_single_frequency_gap_is_zero():
    # |U|^2 of one frequency is constant: exact translation invariance
    spec = OrbitalSpectrum(30.0, L, {30: 0.7 - 0.2j})
    interval = Interval(0.0, L)
    a = GaussianSymbol(center=interval.mid - 0.25, width=0.5)
    gap, deriv = translation_invariance_stat(spec, 0.1, interval, a, 0.5)
    assert gap < 1e-13
    # the derivative pairing only vanishes up to the symbol's boundary tail
    assert deriv < 1e-6


def test_support_leak_detected():
    spec = _spec()
    interval = Interval(0.0, spec.period)
    wide = GaussianSymbol(center=interval.mid, width=2.0)
    with pytest.raises(SupportLeak):
        translation_invariance_stat(spec, 0.1, interval, wide, 0.5)


def test_hann_symbol_partition():
    h = HannSymbol(1.0, 3.0)
    assert h.integral() == pytest.approx(1.0)
    t = np.linspace(1.0, 3.0, 1001)
    assert float(np.trapezoid(h(t), t)) == pytest.approx(1.0, abs=1e-5)
    assert h(0.5) == 0.0 and h(3.5) == 0.0
    assert h.shifted(2.0).support == (3.0, 5.0)


def test_moving_pullback_full_period_identity():
    spec = _spec(seed=3)
    interval = Interval(1.0, 1.0 + spec.period / 2)
    base = normalized_pullback(spec, 0.1, interval)
    moved = moving_pullback([spec], 0.1, interval, [spec.period])[0]
    assert np.max(np.abs(moved.samples - base.samples)) < 1e-10


def test_qer_full_band_matches_parseval():
    mode = sample_random_wave(50.0, 1.0, 5)
    state = torus_geodesic((1, 0))
    samples = sample_restriction(mode, state, count=1024)
    chi_all = BandCutoff(0.0, 2.0)
    val, ref = qer_matrix_element(samples, SymbolDescriptor(chi=chi_all))
    assert val == pytest.approx(float(np.mean(np.abs(samples.values) ** 2)),
                                rel=1e-10)
    assert ref == pytest.approx(4.0 * L * math.pi
                                / (2 * np.pi * (2 * np.pi) ** 2))


def test_qer_band_ratio_reference():
    chi = BandCutoff(0.5, 1.0)
    assert chi.limit_integral() == pytest.approx(
        2.0 * (math.asin(1.0) - math.asin(0.5)))
    assert chi.limit_integral() / BandCutoff(0.0, 1.0).limit_integral() \
        == pytest.approx(2.0 / 3.0)


def test_qer_needs_a_separable_part():
    mode = sample_random_wave(20.0, 1.0, 0)
    samples = sample_restriction(mode, torus_geodesic((1, 0)), count=512)
    with pytest.raises(NonSeparableSymbol):
        qer_matrix_element(samples, SymbolDescriptor())


def test_symbol_descriptor_kinds():
    a = GaussianSymbol(0.0, 1.0)
    chi = BandCutoff(0.0, 1.0)
    assert SymbolDescriptor(alpha=a, chi=chi).kind == "Separable"
    assert SymbolDescriptor(chi=chi).kind == "FrequencyCutoff"
    assert SymbolDescriptor(alpha=a).kind == "Multiplication"


@settings(max_examples=40, deadline=None)
@given(xs=st.lists(st.floats(0.0, 100.0), min_size=1, max_size=200),
       r=st.floats(0.1, 10.0))
def test_chebyshev_filter_pigeonhole(xs, r):
    kept, bound = chebyshev_density_filter(xs, r)
    assert len(kept) / len(xs) >= bound - 1e-12
    mean = float(np.mean(xs))
    assert all(xs[i] <= mean + r for i in kept)


def test_chebyshev_filter_rejects_bad_input():
    with pytest.raises(ValueError):
        chebyshev_density_filter([-1.0, 2.0], 1.0)
    with pytest.raises(ValueError):
        chebyshev_density_filter([1.0], 0.0)


def test_wigner_pairing_constant_symbol_scale():
    spec = _spec(seed=2)
    interval = Interval(0.0, spec.period)
    dens = normalized_pullback(spec, 0.05, interval)
    narrow = GaussianSymbol(center=interval.mid, width=0.8)
    val = wigner_pairing(dens, narrow)
    assert 0.0 < val < 1.0
