"""Wigner densities of normalized pullbacks and QER statistics.

|U|^2 is the squared modulus of the continued restriction on a horizontal
strip line, normalized to unit mass on an interval.  Its pairings with
multiplication symbols become translation invariant in the high-frequency
limit; the matrix elements against separable symbols are compared with
the microlocal limit measure (1 - sigma^2)^{-1/2} ds dsigma.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (NonSeparableSymbol, RangeExceeded, SupportLeak,
                     VanishingRestriction, ZeroEigenvalue)
from .fourier import orbital_coefficients
from .growth import continue_periodic_grid

SPHERE_COTANGENT_VOLUME = 2.0 * np.pi * (2.0 * np.pi) ** 2   # vol(S*M), torus


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    @property
    def length(self):
        return self.hi - self.lo

    @property
    def mid(self):
        return 0.5 * (self.lo + self.hi)

    def contains(self, lo, hi, tol=1e-9):
        return self.lo - tol <= lo and hi <= self.hi + tol


@dataclass(frozen=True)
class GaussianSymbol:
    """Multiplication symbol alpha(t) = e^{-(t-c)^2 / 2 w^2}.

    Effective support is taken as 3 w on each side for the containment
    checks; the tail beyond carries ~1% of the mass and is still
    integrated wherever the symbol is evaluated.
    """

    center: float
    width: float = 1.0

    def __call__(self, t):
        u = (np.asarray(t) - self.center) / self.width
        return np.exp(-0.5 * u * u)

    def derivative(self, t):
        u = (np.asarray(t) - self.center) / self.width
        return -u / self.width * np.exp(-0.5 * u * u)

    def integral(self):
        return self.width * math.sqrt(2.0 * math.pi)

    @property
    def support(self):
        return (self.center - 3 * self.width, self.center + 3 * self.width)

    def shifted(self, s):
        return GaussianSymbol(self.center + s, self.width)


@dataclass(frozen=True)
class HannSymbol:
    """Raised cosine on [lo, hi]; compactly supported, C^1."""

    lo: float
    hi: float

    def __call__(self, t):
        t = np.asarray(t)
        u = (t - self.lo) / (self.hi - self.lo)
        inside = (u >= 0) & (u <= 1)
        return np.where(inside, 0.5 * (1 - np.cos(2 * np.pi * u)), 0.0)

    def derivative(self, t):
        t = np.asarray(t)
        w = self.hi - self.lo
        u = (t - self.lo) / w
        inside = (u >= 0) & (u <= 1)
        return np.where(inside, np.pi / w * np.sin(2 * np.pi * u), 0.0)

    def integral(self):
        return 0.5 * (self.hi - self.lo)

    @property
    def support(self):
        return (self.lo, self.hi)

    def shifted(self, s):
        return HannSymbol(self.lo + s, self.hi + s)


@dataclass(frozen=True)
class BandCutoff:
    """Frequency cutoff chi(sigma) = indicator of a <= |sigma| <= b."""

    a: float
    b: float

    def __call__(self, sigma):
        s = np.abs(np.asarray(sigma, dtype=float))
        return ((s >= self.a) & (s <= self.b)).astype(float)

    def limit_integral(self):
        """int chi (1-sigma^2)^{-1/2} dsigma over [-1, 1], closed form."""
        a, b = max(self.a, 0.0), min(self.b, 1.0)
        if a >= b:
            return 0.0
        return 2.0 * (math.asin(b) - math.asin(a))


@dataclass(frozen=True)
class SymbolDescriptor:
    """Separable symbol alpha(s) chi(sigma / lam); either part optional."""

    alpha: object = None
    chi: object = None

    @property
    def kind(self):
        if self.alpha is not None and self.chi is not None:
            return "Separable"
        if self.chi is not None:
            return "FrequencyCutoff"
        return "Multiplication"


@dataclass
class WignerDensity:
    """Samples of |U|^2 on a uniform grid over I at height tau."""

    interval: Interval
    tau: float
    tgrid: np.ndarray
    samples: np.ndarray
    lam: float
    certificate: float      # int |f|^2 over I before normalization

    def integral(self):
        return float(np.trapezoid(self.samples, self.tgrid))

    def to_csv(self):
        lines = ["t,density"]
        for t, d in zip(self.tgrid, self.samples):
            lines.append("%r,%r" % (float(t), float(d)))
        return "\n".join(lines) + "\n"


def _grid_for(interval, lam, points_per_wavelength=16):
    n = max(256, int(points_per_wavelength * lam * interval.length
                     / (2.0 * np.pi)))
    return np.linspace(interval.lo, interval.hi, n + 1)


def normalized_pullback(spectrum, tau, interval, tgrid=None):
    """|U|^2 on the interval at height tau, unit trapezoidal mass."""
    if tgrid is None:
        tgrid = _grid_for(interval, spectrum.lam)
    f = continue_periodic_grid(spectrum, tgrid, [tau])[0]
    mag2 = np.abs(f) ** 2
    cert = float(np.trapezoid(mag2, tgrid))
    if cert <= 1e-30:
        raise VanishingRestriction("restriction vanishes on the interval")
    return WignerDensity(interval, tau, tgrid, mag2 / cert, spectrum.lam,
                         cert)


def _check_support(symbol, interval):
    lo, hi = symbol.support
    if not interval.contains(lo, hi):
        raise SupportLeak("symbol support [%g, %g] leaves the interval"
                          % (lo, hi))


def wigner_pairing(density, symbol):
    """int a(t) |U|^2 dt for a multiplication symbol supported in I."""
    _check_support(symbol, density.interval)
    return float(np.trapezoid(symbol(density.tgrid) * density.samples,
                              density.tgrid))


def translation_invariance_stat(spectrum, tau, interval, symbol, shift):
    """Translation-invariance defect of the Wigner pairing.

    Returns (gap, derivative_pairing): the gap is
    |int (a(t - s) - a(t)) |U|^2 dt| and the derivative pairing is
    |int a'(t) |U|^2 dt|, the s -> 0+ rate; both vanish for constant
    |U|^2 and decay along high-frequency families.
    """
    _check_support(symbol, interval)
    shifted = symbol.shifted(shift)
    _check_support(shifted, interval)
    dens = normalized_pullback(spectrum, tau, interval)
    gap = abs(wigner_pairing(dens, shifted) - wigner_pairing(dens, symbol))
    deriv = abs(float(np.trapezoid(symbol.derivative(dens.tgrid)
                                   * dens.samples, dens.tgrid)))
    return gap, deriv


def moving_pullback(spectra, tau, interval, shifts):
    """Normalized densities after translating each restriction by N_j.

    Torus translations act exactly on periodic spectra through the phase
    factors e^{2 pi i n N / L}, so a full period is the identity.
    """
    if len(spectra) != len(shifts):
        raise ValueError("one shift per spectrum")
    out = []
    for spec, nj in zip(spectra, shifts):
        if not spec.is_periodic:
            raise RangeExceeded("moving pullback needs periodic spectra")
        out.append(normalized_pullback(spec.shifted(nj), tau, interval))
    return out


def qer_matrix_element(samples, symbol):
    """Matrix element of a separable symbol against a real restriction.

    value = (1/L) int alpha(t) (chi(D/lam) f)(t) conj(f(t)) dt with the
    frequency cutoff acting as an orbital Fourier multiplier; reference =
    (4 / vol(S*M)) int alpha ds int chi (1-sigma^2)^{-1/2} dsigma.  The
    two are reported side by side; only ratios are convention free.
    """
    if samples.lam <= 0:
        raise ZeroEigenvalue
    if symbol.chi is None and symbol.alpha is None:
        raise NonSeparableSymbol("need at least one separable part")
    L = samples.period
    if L is None:
        raise ValueError("periodic restriction required")
    m = len(samples.values)
    spec = orbital_coefficients(samples, n_max=m // 4)
    w = 2.0 * np.pi / (L * samples.lam)
    ns = np.array(sorted(spec.entries), dtype=float)
    nu = np.array([spec.entries[int(n)] for n in ns])
    chi_weights = symbol.chi(w * ns) if symbol.chi is not None else \
        np.ones_like(ns)
    if symbol.alpha is None:
        value = float(np.real(np.sum(chi_weights * np.abs(nu) ** 2)))
        alpha_integral = L
    else:
        filtered = (np.exp(1j * (2 * np.pi / L) * np.outer(samples.tgrid, ns))
                    @ (chi_weights * nu))
        integrand = symbol.alpha(samples.tgrid) * filtered \
            * np.conj(samples.values)
        value = float(np.real(np.sum(integrand)) * (samples.tgrid[1]
                                                    - samples.tgrid[0]) / L)
        alpha_integral = symbol.alpha.integral()
    # int over [-1, 1] of (1 - sigma^2)^{-1/2} dsigma = pi when chi == 1
    chi_integral = symbol.chi.limit_integral() if symbol.chi is not None \
        else math.pi
    reference = 4.0 / SPHERE_COTANGENT_VOLUME * alpha_integral * chi_integral
    return value, reference


def chebyshev_density_filter(statistics, r):
    """Indices with X(j) <= mean + R and the guaranteed density bound.

    For any nonnegative sequence with Cesaro mean M, the retained set has
    counting density at least R / (M + R); on a finite list this is an
    exact pigeonhole bound.
    """
    x = np.asarray(statistics, dtype=float)
    if np.any(x < 0):
        raise ValueError("statistics must be nonnegative")
    if r <= 0:
        raise ValueError("R must be positive")
    mean = float(np.mean(x)) if len(x) else 0.0
    kept = [int(i) for i in np.nonzero(x <= mean + r)[0]]
    return kept, r / (mean + r)
