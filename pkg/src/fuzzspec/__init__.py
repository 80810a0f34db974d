"""Fourier and nonlinear-Fourier spectra of fuzzy subsets of the unit
circle, Toeplitz order classification, and constructive spectral
defuzzification: for any fuzzy set and any n, the crisp union of n arcs
whose first n Fourier coefficients match the fuzzy set's."""

from .crisp import (ArcSystem, SignPolynomial, crisp_spectrum,
                    random_arc_system, rational_expansion, sign_polynomial)
from .errors import (DomainError, FuzzspecError, InvalidSequenceError,
                     NumericError, PreconditionError, ReconstructionError,
                     UnsupportedError, ValidationError)
from .membership import (ArcMembership, MembershipFunction,
                         MixtureMembership, PiecewiseLinearMembership,
                         RaisedCosineMembership, SampledMembership,
                         SignCosPlusMembership, TrapezoidMembership,
                         membership_from_dict, merge_piecewise_linear,
                         preset_membership, random_trapezoid_mixture)
from .nonlinear import (HardySeries, NonlinearSpectrum, c0_from_s0, c_to_s,
                        exp_series, hardy_series, nonlinear_from_exp,
                        product_series, s_to_c)
from .periodize import (BumpLine, GaussianLine, PeriodizedMembership,
                        PoissonReport, SchwartzFunction, defuzz_on_line,
                        periodize, poisson_check, schwartz_from_dict)
from .reconstruct import (MatchReport, ReconstructionConfig,
                          ReconstructionResult, SweepEntry,
                          approximation_sequence, defuzz, verify_match)
from .spectra import (COEFFICIENT_BOUND, BoundsReport, HermitianSpectrum,
                      QuadratureConfig, fourier_coefficient,
                      fourier_coefficients, parseval_residual, squared_mean,
                      validate_fuzzy_spectrum)
from .toeplitz import (OrderClassification, ToeplitzAnalysis,
                       UnitRootDecomposition, build_matrices,
                       caratheodory_extend, classify_order, corner_affine,
                       determinant_sequence, toeplitz_polynomial,
                       unit_root_decompose)

__version__ = "0.1.0"
