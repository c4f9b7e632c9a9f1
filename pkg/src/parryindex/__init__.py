"""Repetitions and the index of the infinite word coding beta-integers
for quadratic non-simple Parry numbers (d_beta(1) = p q^omega, p > q >= 1)."""

from .arith import (BigRational, ContinuedFraction, QuadraticNumber, beta_of,
                    convergent_denominators, limit_index, slope_cf, sturmian_index_term,
                    sturmian_supremum, sturmian_term)
from .kernels import BACKEND
from .repetition import (ComplexityProfile, FactorIndexResult, Run, SaturationError,
                         factor_complexity, fractional_power, index_in_prefix,
                         max_integer_power, maximal_runs, naive_maximal_runs, special_factors)
from .theory import (IndexVerdict, SequencePair, abelian_v, abelian_w, bispecials_via_T,
                     desubstitute, hat_sequence, index_w_n, index_w_n_closed_form,
                     max_integer_power_theorem, t_map, v_sequence, w_sequence, word_index)
from .words import (AbelianVector, BinaryWord, Morphism, MorphismMatrix, ParryParams,
                    apply_morphism, fixed_point_prefix, make_parry_morphism)

__version__ = "0.1.0"
