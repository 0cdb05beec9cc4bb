"""How fast can a restriction grow into the complex strip?

The L^2 mass of a continued restriction on the line Im t = tau is bounded
by e^{2 tau lambda} (up to lower-order terms), and random waves saturate
the bound as lambda grows.  The sphere contrast cases bracket the range:
a Gaussian beam saturates exactly, a zonal harmonic does not grow at all.
"""

import numpy as np

import striplab as sl
from striplab.svgplot import Figure

state = sl.torus_geodesic((1, 0))
taus = np.linspace(0.0, 0.4, 17)

fig = Figure("L2 growth exponent of random-wave restrictions",
             "tau", "exponent")
for lam in (50.0, 100.0, 400.0):
    spec = sl.exact_restriction_spectrum(
        sl.sample_random_wave(lam, 1.0, 0), state)
    exps = [sl.l2_growth_exponent(spec, t) for t in taus]
    gap = 2 * 0.4 - exps[-1]
    print("lambda=%4.0f: exponent(0.4) = %.4f, gap to 2 tau = %.4f"
          % (lam, exps[-1], gap))
    fig.line(list(taus), exps, label="lambda=%g" % lam)
fig.line(list(taus), list(2 * taus), label="2 tau bound")

beam = sl.sphere_equator_spectrum(200, 200)
zonal = sl.sphere_equator_spectrum(200, 0)
print("Gaussian beam (200,200): sup exponent at tau=0.3 ->",
      sl.sup_growth_exponent(beam, tau=0.3))
print("zonal (200,0):           l2 exponent at tau=0.3  ->",
      sl.l2_growth_exponent(zonal, 0.3))

# the global upper bound holds pointwise on the whole strip
prof = sl.growth_profile(
    sl.exact_restriction_spectrum(sl.sample_random_wave(150.0, 1.0, 2),
                                  state),
    sl.Strip(0.0, 2 * np.pi, 0.3))
violations, excess = sl.check_growth_bound(prof)
print("pointwise bound v <= 2|tau| + 6 log(lam)/lam: %d violations "
      "(max excess %.3f)" % (violations, excess))

with open("growth_saturation.svg", "w") as fh:
    fh.write(fig.render())
print("wrote growth_saturation.svg")
