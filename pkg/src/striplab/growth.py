"""Analytic continuation into strips and growth-rate functionals.

The central object is v(t, tau) = (1/lam) log |f(t + i tau)|^2 for a
continued restriction f.  For L^2-normalized modes v is bounded above by
2|tau| up to O(log lam / lam), and saturates that bound exactly when the
orbital spectrum carries mass at the extreme frequencies +-lam.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (EmptySpectrum, GridTooCoarse, OffShell, StripExceeded,
                     ZeroEigenvalue)
from .fourier import OrbitalSpectrum, exact_restriction_spectrum
from .geodesics import flat_sqrt_rho

LOG_FLOOR = -50.0


@dataclass(frozen=True)
class Strip:
    """Rectangular grid on [t0, t1] x [-tau_max, tau_max]."""

    t0: float
    t1: float
    tau_max: float
    nt: int = 256
    ntau: int = 33

    def __post_init__(self):
        if self.t0 >= self.t1 or self.tau_max <= 0:
            raise ValueError("degenerate strip")

    @property
    def t_values(self):
        return np.linspace(self.t0, self.t1, self.nt)

    @property
    def tau_values(self):
        return np.linspace(-self.tau_max, self.tau_max, self.ntau)


@dataclass
class GrowthProfile:
    """Sampled v(t, tau) = (1/lam) log |f(t + i tau)|^2, clamped below."""

    strip: Strip
    values: np.ndarray      # shape (ntau, nt)
    lam: float
    floor: float = LOG_FLOOR

    def to_csv(self):
        lines = ["t,tau,v"]
        for i, tau in enumerate(self.strip.tau_values):
            for j, t in enumerate(self.strip.t_values):
                lines.append("%r,%r,%r" % (float(t), float(tau),
                                           float(self.values[i, j])))
        return "\n".join(lines) + "\n"


def _entry_arrays(spectrum):
    if not spectrum.entries:
        raise EmptySpectrum("spectrum has no entries")
    ns = np.array(sorted(spectrum.entries), dtype=float)
    vals = np.array([spectrum.entries[int(n)] for n in ns], dtype=complex)
    return ns, vals


def continue_periodic(spectrum, z):
    """Continuation sum nu(n) e^{2 pi i n z / L}, compensated summation."""
    z = complex(z)
    if abs(z.imag) > spectrum.tau_max + 1e-15:
        raise StripExceeded("|tau|=%g beyond declared %g"
                            % (abs(z.imag), spectrum.tau_max))
    w = 2.0 * np.pi / spectrum.period
    terms = [v * np.exp(1j * w * n * z) for n, v in spectrum.entries.items()]
    return complex(math.fsum(t.real for t in terms),
                   math.fsum(t.imag for t in terms))


def continue_periodic_grid(spectrum, t, tau):
    """Vectorized continuation on the tensor grid t x tau -> (ntau, nt)."""
    ns, vals = _entry_arrays(spectrum)
    w = 2.0 * np.pi / spectrum.period
    t = np.atleast_1d(np.asarray(t, dtype=float))
    tau = np.atleast_1d(np.asarray(tau, dtype=float))
    damp = np.exp(-w * np.outer(tau, ns)) * vals       # (ntau, nterms)
    osc = np.exp(1j * w * np.outer(ns, t))             # (nterms, nt)
    return damp @ osc


def continue_windowed(spectrum, z, divide_factor=False, tol=1e-6):
    """Continuation of G . f by Fourier inversion of nu^G.

    (1/2 pi) int e^{i z sigma} nu^G(sigma) d sigma on the stored sigma
    grid; the grid must cover [-lam - 5, lam + 5] and a half-resolution
    comparison must agree to tol relatively, else GridTooCoarse.  With
    divide_factor the Gaussian factor's own continuation is divided out.
    """
    sig, nu = spectrum.sigma, spectrum.values
    if sig[0] > -spectrum.lam - 5 or sig[-1] < spectrum.lam + 5:
        raise GridTooCoarse("sigma grid does not cover the energy band")
    z = np.asarray(z, dtype=complex)
    dsig = sig[1] - sig[0]
    w = np.full(len(sig), dsig)
    w[0] = w[-1] = 0.5 * dsig
    kernel = np.exp(1j * np.multiply.outer(z, sig))
    fine = kernel @ (nu * w) / (2.0 * np.pi)
    w2 = np.full(len(sig[::2]), 2 * dsig)
    w2[0] = w2[-1] = dsig
    coarse = kernel[..., ::2] @ (nu[::2] * w2) / (2.0 * np.pi)
    scale = np.max(np.abs(fine)) + 1e-300
    if np.max(np.abs(fine - coarse)) / 3.0 > tol * scale:
        raise GridTooCoarse("inversion quadrature error above tolerance")
    if divide_factor:
        fine = fine / spectrum.factor.continuation(z)
    return fine if fine.shape else complex(fine)


def growth_profile(spectrum, strip):
    """Grid evaluation of v = (1/lam) log |f|^2, log clamped at the floor."""
    if spectrum.lam <= 0:
        raise ZeroEigenvalue("growth profile needs lam > 0")
    if abs(strip.tau_max) > spectrum.tau_max + 1e-15:
        raise StripExceeded
    t, tau = strip.t_values, strip.tau_values
    if spectrum.is_periodic:
        f = continue_periodic_grid(spectrum, t, tau)
    else:
        zz = t[None, :] + 1j * tau[:, None]
        f = continue_windowed(spectrum, zz, divide_factor=True)
    with np.errstate(divide="ignore"):
        v = np.log(np.abs(f) ** 2) / spectrum.lam
    v = np.maximum(v, LOG_FLOOR)
    return GrowthProfile(strip, v, spectrum.lam)


def check_growth_bound(profile, c=6.0):
    """Violations of v(t, tau) <= 2 |tau| + c log(lam)/lam on the grid."""
    slack = c * math.log(max(profile.lam, 2.0)) / profile.lam
    bound = 2.0 * np.abs(profile.strip.tau_values)[:, None] + slack
    excess = profile.values - bound
    return int(np.sum(excess > 0)), float(np.max(excess))


def l2_growth_exponent(spectrum, tau):
    """(1/lam) log of the mass-normalized line norm on the tau translate.

    Parseval gives ||f(. + i tau)||^2_{L^2} per unit length as
    sum |nu(n)|^2 e^{-4 pi n tau / L}; the exponent is measured relative
    to the tau = 0 mass so that a pure extreme-frequency mode gives
    exactly 2 tau and a zero-frequency (zonal) spectrum gives exactly 0.
    """
    if spectrum.lam <= 0:
        raise ZeroEigenvalue
    if not spectrum.entries:
        raise EmptySpectrum
    ns, vals = _entry_arrays(spectrum)
    w = 4.0 * np.pi / spectrum.period
    mass = np.abs(vals) ** 2
    # factor the dominant exponential out of the log-sum for stability
    expo = -w * ns * tau
    top = np.max(expo)
    line = math.log(float(np.sum(mass * np.exp(expo - top)))) + float(top)
    base = math.log(float(np.sum(mass)))
    return (line - base) / spectrum.lam


def sup_growth_exponent(source, state=None, tau=0.3, tgrid=None):
    """(1/lam) log of the sup of |f^C| on the tau lines over the real sup.

    source is an Eigenmode (with a periodic state) or an OrbitalSpectrum.
    Measured on both boundary lines +-tau relative to the real-axis sup,
    so a single-frequency restriction gives exactly |tau| * |n|/lam.
    """
    if isinstance(source, OrbitalSpectrum):
        spectrum = source
    else:
        spectrum = exact_restriction_spectrum(source, state)
    if spectrum.lam <= 0:
        raise ZeroEigenvalue
    if tgrid is None:
        tgrid = np.linspace(0.0, spectrum.period, 4096, endpoint=False)
    rows = continue_periodic_grid(spectrum, tgrid, [-abs(tau), 0.0, abs(tau)])
    sup_strip = float(np.max(np.abs(rows[[0, 2], :])))
    sup_real = float(np.max(np.abs(rows[1, :])))
    return math.log(sup_strip / sup_real) / spectrum.lam


def select_window(tgrid, values, lam, width):
    """Best unit-mass window: argmax over [N, N + width] of int |f|^2 dt.

    Scans grid-aligned windows; ties break to the smallest N.  Returns
    (N, (1/lam) log of the window mass).
    """
    tgrid = np.asarray(tgrid, dtype=float)
    mag2 = np.abs(np.asarray(values)) ** 2
    dt = tgrid[1] - tgrid[0]
    w = int(round(width / dt))
    if w < 1 or w >= len(tgrid):
        raise ValueError("window width out of range for the grid")
    cells = 0.5 * (mag2[1:] + mag2[:-1]) * dt
    cum = np.concatenate([[0.0], np.cumsum(cells)])
    masses = cum[w:] - cum[:-w]
    best = int(np.argmax(masses))          # first occurrence = smallest N
    return float(tgrid[best]), math.log(max(masses[best], 1e-300)) / lam


def tempered_weyl_sum(zeta, lam, tau):
    """Brute-force tempered spectral sum on the flat torus.

    sum over lattice |n| <= lam of e^{-2 tau |n|} |phi_n^C(zeta)|^2 with
    L^2-normalized modes phi_n = e^{i<n,x>} / 2 pi.  The evaluation point
    must sit on the shell sqrt(rho)(zeta) = tau.
    """
    if abs(flat_sqrt_rho(zeta) - tau) > 1e-9:
        raise OffShell("sqrt(rho)(zeta)=%g but tau=%g"
                       % (flat_sqrt_rho(zeta), tau))
    if lam < 10.0 / tau:
        raise ValueError("lam below the semiclassical threshold 10/tau")
    r = int(math.floor(lam))
    n1, n2 = np.meshgrid(np.arange(-r, r + 1), np.arange(-r, r + 1),
                         indexing="ij")
    norm = np.hypot(n1, n2)
    mask = norm <= lam
    im1, im2 = float(np.imag(zeta[0])), float(np.imag(zeta[1]))
    expo = (-2.0 * tau * norm[mask]
            - 2.0 * (n1[mask] * im1 + n2[mask] * im2))
    return float(np.sum(np.exp(expo))) / (2.0 * np.pi) ** 2


def hartogs_dichotomy_check(profiles, eps, probe, n_translates=8):
    """Deficiency dichotomy for a family of profiles with increasing lam.

    Estimates the limiting v on the probe interval and on disjoint
    translates along the top tau line, using the largest-lam profiles.
    If the family is eps-deficient on the probe it must be deficient (to
    eps/2) on every translate; the report also carries the global upper
    bound max v <= 2 tau + 6 log(lam)/lam.
    """
    if len(profiles) < 3:
        raise ValueError("need at least 3 profiles")
    lams = [p.lam for p in profiles]
    if any(b <= a for a, b in zip(lams, lams[1:])):
        raise ValueError("profiles must have strictly increasing lam")

    strip = profiles[-1].strip
    tau_top = strip.tau_values[-1]
    t = strip.t_values

    def line_mean(profile, interval):
        mask = (t >= interval[0]) & (t <= interval[1])
        return float(np.mean(profile.values[-1, mask]))

    # limsup proxy: max over the two largest-lam members
    def est(interval):
        return max(line_mean(p, interval) for p in profiles[-2:])

    width = probe[1] - probe[0]
    span = strip.t1 - strip.t0
    starts = np.linspace(strip.t0, strip.t1 - width,
                         n_translates, endpoint=True)
    translates = [(s, s + width) for s in starts]

    target = 2.0 * abs(tau_top) - eps
    probe_est = est(probe)
    probe_deficient = probe_est < target
    translate_ests = [est(iv) for iv in translates]
    if probe_deficient:
        holds = all(e <= target + eps / 2.0 for e in translate_ests)
    else:
        holds = True
    bound_ok = all(check_growth_bound(p)[0] == 0 for p in profiles)
    return {"probe_estimate": probe_est, "probe_deficient": probe_deficient,
            "translate_estimates": translate_ests,
            "dichotomy_holds": holds, "global_bound_ok": bound_ok,
            "target": target, "span": span}
