"""striplab: complexified eigenfunction restrictions along geodesics.

Builds restrictions of model-surface eigenmodes to geodesics, continues
them into complex strips, finds their zeros, and measures the growth,
band-mass and Wigner-invariance statistics that govern how the zeros
condense onto the real geodesic at high frequency.
"""

__version__ = "0.1.0"

from . import errors
from .surfaces import (Eigenmode, GeodesicState, SurfaceModel,
                       annulus_lattice_points, evaluate_mode,
                       evaluate_mode_grid, make_torus_mode,
                       sample_random_wave, sphere_equator_spectrum,
                       torus_geodesic)
from .geodesics import (HorizontalSection, ReturnRecord,
                        asymmetry_diagnostic, first_return,
                        flat_complex_geodesic, flat_sqrt_rho,
                        integrate_complex_geodesic, reflect_state)
from .fourier import (CauchyFactor, GaussianFactor, OrbitalSpectrum,
                      RestrictionSamples, band_mass,
                      exact_restriction_spectrum, orbital_coefficients,
                      paley_wiener_check, plancherel_check,
                      sample_arc, sample_restriction, windowed_transform)
from .growth import (GrowthProfile, Strip, check_growth_bound,
                     continue_periodic, continue_periodic_grid,
                     continue_windowed, growth_profile,
                     hartogs_dichotomy_check, l2_growth_exponent,
                     select_window, sup_growth_exponent, tempered_weyl_sum)
from .zeros import (BoxIndicator, CosineWindow, GaussianBump, ZeroSet,
                    argument_principle_count, empirical_measure_pairing,
                    laurent_roots, lelong_box_integral, lelong_density)
from .wigner import (BandCutoff, GaussianSymbol, HannSymbol, Interval,
                     SymbolDescriptor, WignerDensity,
                     chebyshev_density_filter, moving_pullback,
                     normalized_pullback, qer_matrix_element,
                     translation_invariance_stat, wigner_pairing)
from .experiments import (ResultRecord, emit_plots, run_experiment,
                          sine_spectrum, validate_config, write_results)
