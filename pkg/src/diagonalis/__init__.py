"""Exact-arithmetic laboratory for positivity of symmetric rational
functions 1 / sum_k c_k e_k(x_1, ..., x_d) and their diagonals."""

from .exactalg import Rational, UniPoly, binomial, rat, rat_str
from .family import FamilySpec, canonicalize, make_family, named_instance
from .multipoly import (MultiPoly, elementary_symmetric, partial_derivative,
                        scale_variables, substitute_zero, symmetric_denominator)
from .sequences import (PRecurrence, SequenceWindow, binomial_oracle,
                        builtin_recurrence, characteristic_polynomial,
                        extract_diagonal, recurrence_check, recurrence_extend,
                        recurrence_guess, recurrence_seed, sequence_sign_scan)
from .seriesbox import (CoeffBox, expand_reciprocal, first_nonpositive,
                        lambda_coefficient_check, load_cache, save_cache)
from .uniseries import (LogSolution, UniSeries, hypergeometric_2f1,
                        recurrence_to_frobenius, theta_hexagonal,
                        verify_series_identity)

__version__ = "0.1.0"
