"""Orbital Fourier analysis of restricted eigenfunctions.

Periodic case: a restriction to a closed geodesic of period L has Fourier
coefficients nu(n) = (1/L) int_0^L phi(gamma(t)) e^{-2 pi i n t / L} dt,
computed exactly on uniform grids (the quadrature is the DFT and is exact
for band-limited restrictions above Nyquist).  Non-periodic case: the
transform only makes sense against an analytic decaying convergence
factor G; nu^G(sigma) = int G(t) phi(gamma(t)) e^{-i t sigma} dt.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (EmptySpectrum, PoleTooClose, Undersampled,
                     WindowTooShort, ZeroEigenvalue)
from .surfaces import TORUS_SIDE, evaluate_mode_grid


@dataclass(frozen=True)
class GaussianFactor:
    """Convergence factor e^{-t^2/2}; entire, with explicit continuation."""

    def __call__(self, t):
        return np.exp(-0.5 * np.asarray(t) ** 2)

    def continuation(self, z):
        return np.exp(-0.5 * np.asarray(z, dtype=complex) ** 2)

    name = "Gaussian"


@dataclass(frozen=True)
class CauchyFactor:
    """Convergence factor 1/(t + i p); analytic in |Im t| < |p|."""

    p: float

    def __call__(self, t):
        return 1.0 / (np.asarray(t, dtype=complex) + 1j * self.p)

    def continuation(self, z):
        return 1.0 / (np.asarray(z, dtype=complex) + 1j * self.p)

    @property
    def name(self):
        return "CauchyPole(%g)" % self.p


@dataclass
class OrbitalSpectrum:
    """Frequency content of a restricted eigenfunction.

    Periodic: period L and a map n -> nu(n) over integer frequencies.
    Aperiodic: period None, a uniform sigma grid with transform values and
    the convergence factor that produced them.
    """

    lam: float
    period: float | None = None
    entries: dict = field(default_factory=dict)
    sigma: np.ndarray | None = None
    values: np.ndarray | None = None
    factor: object | None = None
    tau_max: float = 1.0
    parseval_defect: float | None = None

    @property
    def is_periodic(self):
        return self.period is not None and self.sigma is None

    @property
    def n_min(self):
        if not self.entries:
            raise EmptySpectrum("no entries")
        return min(self.entries)

    @property
    def n_max(self):
        if not self.entries:
            raise EmptySpectrum("no entries")
        return max(self.entries)

    def total_mass(self):
        if self.is_periodic:
            return sum(abs(v) ** 2 for v in self.entries.values())
        dsig = self.sigma[1] - self.sigma[0]
        return float(np.trapezoid(np.abs(self.values) ** 2, dx=dsig))

    def is_real_restriction(self, tol=1e-12):
        scale = max((abs(v) for v in self.entries.values()), default=1.0)
        for n, v in self.entries.items():
            if abs(self.entries.get(-n, 0.0) - np.conj(v)) > tol * (1 + scale):
                return False
        return True

    def shifted(self, s):
        """Spectrum of t -> f(t + s): nu(n) e^{2 pi i n s / L}."""
        w = 2.0 * np.pi / self.period
        return OrbitalSpectrum(
            self.lam, self.period,
            {n: v * np.exp(1j * w * n * s) for n, v in self.entries.items()},
            tau_max=self.tau_max)

    def to_json(self):
        obj = {"lambda": self.lam, "period": self.period,
               "tau_max": self.tau_max,
               "entries": [[n, v.real, v.imag]
                           for n, v in sorted(self.entries.items())]}
        return json.dumps(obj)

    @staticmethod
    def from_json(text):
        obj = json.loads(text)
        return OrbitalSpectrum(
            obj["lambda"], obj["period"],
            {int(n): complex(re, im) for n, re, im in obj["entries"]},
            tau_max=obj["tau_max"])

    def to_csv(self):
        lines = ["n,re,im" if self.is_periodic else "sigma,re,im"]
        if self.is_periodic:
            for n, v in sorted(self.entries.items()):
                lines.append("%d,%r,%r" % (n, v.real, v.imag))
        else:
            for s, v in zip(self.sigma, self.values):
                lines.append("%r,%r,%r" % (float(s), v.real, v.imag))
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class RestrictionSamples:
    """Uniform samples of phi(gamma(t)); power-of-two count for the FFT."""

    state: object
    tgrid: np.ndarray
    values: np.ndarray
    lam: float
    period: float | None = None
    mode_id: str = ""


def sample_restriction(mode, state, count=1024):
    """Sample a torus mode along one period of a closed geodesic."""
    if state.period is None:
        raise ValueError("state must be periodic; use sample_arc instead")
    if count & (count - 1):
        raise ValueError("sample count must be a power of two")
    t = np.arange(count) * (state.period / count)
    x1 = state.x[0] + t * state.xi[0]
    x2 = state.x[1] + t * state.xi[1]
    vals = evaluate_mode_grid(mode, x1, x2)
    return RestrictionSamples(state, t, vals, mode.lam, period=state.period,
                              mode_id="seed=%s" % mode.seed)


def sample_arc(mode, state, half_length, count=4096):
    """Sample a torus mode along the arc t in [-T, T] of a geodesic."""
    if count & (count - 1):
        raise ValueError("sample count must be a power of two")
    t = np.linspace(-half_length, half_length, count)
    x1 = state.x[0] + t * state.xi[0]
    x2 = state.x[1] + t * state.xi[1]
    vals = evaluate_mode_grid(mode, x1, x2)
    return RestrictionSamples(state, t, vals, mode.lam,
                              mode_id="seed=%s" % mode.seed)


def exact_restriction_spectrum(mode, state, tau_max=1.0):
    """Exact orbital spectrum of a lattice mode along direction q.

    The restriction of e^{i<n,x>} to x0 + t q/|q| is a pure exponential
    with integer orbital frequency <n, q>, so coefficients aggregate over
    level sets of <., q> with the phase e^{i<n,x0>}.
    """
    if state.q is None:
        raise ValueError("exact spectrum needs a periodic lattice direction")
    entries = {}
    for n, c in mode.terms:
        k = n[0] * state.q[0] + n[1] * state.q[1]
        phase = np.exp(1j * (n[0] * state.x[0] + n[1] * state.x[1]))
        entries[k] = entries.get(k, 0.0) + c * phase
    entries = {k: v for k, v in entries.items() if v != 0}
    return OrbitalSpectrum(mode.lam, state.period, entries, tau_max=tau_max)


def orbital_coefficients(samples, n_max, tau_max=1.0):
    """Orbital Fourier coefficients for |n| <= n_max from one period.

    The uniform-grid quadrature of (1/L) int f e^{-2 pi i n t/L} is the
    scaled DFT; it is exact when the restriction is band limited below the
    Nyquist frequency.  Requires at least a 4x anti-aliasing margin.
    """
    if samples.period is None:
        raise ValueError("periodic samples required")
    m = len(samples.values)
    if m < 4 * n_max:
        raise Undersampled("%d samples for n_max=%d" % (m, n_max))
    coeff = np.fft.fft(samples.values) / m
    entries = {}
    for n in range(-n_max, n_max + 1):
        entries[n] = complex(coeff[n % m])
    spec = OrbitalSpectrum(samples.lam, samples.period, entries,
                           tau_max=tau_max)
    mean_sq = float(np.mean(np.abs(samples.values) ** 2))
    spec.parseval_defect = abs(spec.total_mass() - mean_sq)
    return spec


def windowed_transform(samples, factor, sigma_grid):
    """nu^G(sigma) = int G(t) f(t) e^{-i t sigma} dt on a uniform grid.

    Trapezoidal quadrature over the sampled arc [-T, T]; the Gaussian
    factor must be below 1e-12 at the endpoints, the Cauchy pole must sit
    outside the strip.  Truncation and spacing are recorded on the result.
    """
    t = samples.tgrid
    T = float(t[-1])
    if isinstance(factor, CauchyFactor):
        if abs(factor.p) <= 1e-12:
            raise PoleTooClose("pole at 0")
        trunc = 1.0 / abs(T + 1j * factor.p)
    else:
        trunc = float(np.exp(-0.5 * T * T))
        if trunc > 1e-12:
            raise WindowTooShort("|G(T)| = %.3g > 1e-12" % trunc)
    g = np.asarray(factor(t)) * samples.values
    dt = t[1] - t[0]
    sigma = np.asarray(sigma_grid, dtype=float)
    kernel = np.exp(-1j * np.outer(sigma, t))
    w = np.full(len(t), dt)
    w[0] = w[-1] = 0.5 * dt
    vals = kernel @ (g * w)
    spec = OrbitalSpectrum(samples.lam, None, sigma=sigma, values=vals,
                           factor=factor)
    spec.truncation_error = trunc
    return spec


def check_pole(factor, tau_max):
    if isinstance(factor, CauchyFactor) and abs(factor.p) <= tau_max:
        raise PoleTooClose("pole |p|=%g inside strip tau_max=%g"
                           % (abs(factor.p), tau_max))


def band_mass(spectrum, a, b):
    """Squared-coefficient mass in the frequency band a*lam <= |freq| <= b*lam.

    Frequencies are measured in the geodesic's natural units 2 pi n / L
    (periodic) or sigma (aperiodic).  Additive over disjoint bands and
    totals the full mass on [0, 1 + margin].
    """
    lam = spectrum.lam
    if lam <= 0:
        raise ZeroEigenvalue("band_mass needs lam > 0")
    lo, hi = a * lam, b * lam
    if spectrum.is_periodic:
        w = 2.0 * np.pi / spectrum.period
        return sum(abs(v) ** 2 for n, v in spectrum.entries.items()
                   if lo <= abs(w * n) <= hi)
    mask = (np.abs(spectrum.sigma) >= lo) & (np.abs(spectrum.sigma) <= hi)
    dsig = spectrum.sigma[1] - spectrum.sigma[0]
    return float(np.sum(np.abs(spectrum.values[mask]) ** 2) * dsig)


def paley_wiener_check(spectrum, tau, m=2):
    """Check |nu(n)|^2 <= lam^{(m-1)/2} e^{2 |tau| (lam - |n|)} for |n| >= lam.

    High angular momentum beyond the eigenvalue must decay exponentially
    at the strip rate; violations name the offending frequency.
    """
    lam = spectrum.lam
    if lam <= 0:
        raise ZeroEigenvalue
    rows, worst, worst_n = [], -np.inf, None
    for n, v in sorted(spectrum.entries.items()):
        if abs(n) < lam:
            continue
        bound = lam ** ((m - 1) / 2.0) * math.exp(2 * abs(tau) * (lam - abs(n)))
        margin = abs(v) ** 2 - bound
        rows.append({"n": n, "mass": abs(v) ** 2, "bound": bound,
                     "ok": margin <= 0})
        if margin > worst:
            worst, worst_n = margin, n
    return {"rows": rows, "passed": all(r["ok"] for r in rows),
            "worst_margin": worst if rows else 0.0, "worst_n": worst_n}


def plancherel_check(samples, factor, tau, sigma_grid, sgrid):
    """Both sides of the windowed Plancherel identity at height tau >= 0.

    Left: int |G . f^C (s + i tau)|^2 ds with the continuation rebuilt by
    Fourier inversion of nu^G.  Right: (1/2 pi) int e^{-2 tau sigma}
    |nu^G(sigma)|^2 d sigma.  Derived with the weight e^{-2 tau sigma} for
    tau >= 0 (the continuation of e^{i s sigma} is e^{i(s + i tau) sigma}).
    """
    if tau < 0:
        raise ValueError("convention pins tau >= 0")
    from .growth import continue_windowed
    spec = windowed_transform(samples, factor, sigma_grid)
    vals = continue_windowed(spec, sgrid + 1j * tau)
    lhs = float(np.trapezoid(np.abs(vals) ** 2, sgrid))
    dsig = spec.sigma[1] - spec.sigma[0]
    rhs = float(np.trapezoid(
        np.exp(-2.0 * tau * spec.sigma) * np.abs(spec.values) ** 2,
        dx=dsig)) / (2.0 * np.pi)
    scale = max(abs(lhs), abs(rhs))
    gap = abs(lhs - rhs) / scale if scale > 0 else 0.0
    return lhs, rhs, gap
