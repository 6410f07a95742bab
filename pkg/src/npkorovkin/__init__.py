"""Interpolation-type approximation operators on Chebyshev angles, their
transform-side extension to the line, and non-positive Kantorovich variants.
"""

from .chebyshev import ChebyshevGrid, cardinal_matrix, chebyshev_grid, fundamental_poly, shifted_pair
from .errors import (ArgumentError, CapabilityError, EvaluationError, InconsistencyError, NumericsError,
                     ToleranceNotMetError, WitnessNotFoundError)
from .extended import (apply_hn_delta, apply_kn, hn_values, kn_values, rate_report, rr_term,
                       vk_closed_form, vk_quadrature)
from .fourier import (ApproximateIdentity, FourierConvention, Spectrum, class_u_diagnostic, fejer_identity,
                      fourier_transform, inverse_transform)
from .grunwald import (apply_gn, apply_gn_extended, grunwald_operator, lebesgue_function,
                       nonpositivity_witness_gn, nu_n, operator_norm_gn, quantitative_bound_report, xi_n)
from .kantorovich import (L1Operator, apply_an, apply_bn, characteristic_condition_check, dyadic_indicator,
                          kantorovich_operator, l1_operator_norm_bound, mu_n)
from .kernels import BACKEND
from .numerics import Interval, QuadratureSpec, RealFunction, integrate, modulus_of_continuity, sup_on_interval
from .report import Column, ReportTable

__version__ = "0.1.0"
