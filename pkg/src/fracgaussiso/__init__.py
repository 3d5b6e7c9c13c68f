"""Fractional Gaussian perimeters, extensions and isoperimetric deficits.

Numerical library for one-dimensional Gaussian sets: Hermite-spectral
fractional perimeters, Fraenkel asymmetries, the subordinated extension
field with its level sets, a finite-difference energy cross-check, and
verifiers for the quantitative isoperimetric inequality.
"""

from ._backend import BACKEND
from .errors import (DegenerateSetError, DomainError, QuadratureError,
                     ResolutionError, SetParseError)
from .gauss_core import (ConstantsTable, FractionalOrder, QuadratureRule,
                         beta_coefficient, constants, gamma_fn,
                         gauss_hermite_rule, hermite_eval, iso_function,
                         k_coefficient, phi, phi_inv)
from .sets import (EMPTY, FULL_LINE, GaussianSet, Halfline, asymmetry,
                   best_halfline, complement, ehrhard_symmetrize, halfline,
                   interval, intersect, measure, reflect, set_minus,
                   symm_diff, union)
from .spectral import (PerimeterValue, SpectralCoefficients,
                       asymptotic_limit, asymptotic_series_value,
                       coeff_halfline, coeff_set, cylinder_perimeter_2d,
                       halfline_perimeter_reference, halfspace_series,
                       perimeter_spectral, spectral_coefficients)
from .extension import (ExtensionField, LevelSetRecord, SubordinationProfile,
                        boundary_flux_check, boundary_flux_richardson,
                        evaluate_extension, extension_field, level_set,
                        level_set_with_budget, mehler_extension,
                        mehler_semigroup, profile_psi, trace_gap)
from .pde import pde_energy, pde_energy_cylinder
from .inequality import (ConstantParams, DeficitReport, constant_C, f_weight,
                         sigma_min, verify_levelset_bounds,
                         verify_levelset_closeness, verify_main,
                         verify_transfer_lemma, z_thresholds)
from .suites import random_gaussian_set, run_suite

__version__ = "0.1.0"
