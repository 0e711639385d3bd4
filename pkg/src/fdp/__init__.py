"""Exact tools for function density problems: covering radii r(C, C') of
linear codes, the hash-collision attack bound, the lamp puzzle, and
PRG -> nb-PRG parameter conversion."""

__version__ = "0.1.0"

from .algebra import FieldElement, FieldSpec, Word, field_make, field_of_order, hamming_distance, weight
from .codes import (LinearCode, code_from_spec, golay23, golay24, hamming_code, random_code,
                    reed_muller, reed_solomon)
from .core import (BoundReport, CosetProfile, boolean_bounds, count_bounds, coset_profile,
                   covering_radius, distance_to_code, lower_bound_ell, upper_bound_codim)
from .errors import FDPError
from .hash_attack import (AttackReport, HashInstance, exact_success_probability, lemma1_bound,
                          phi_min_oracle, random_approximation, simulate_attack)
from .nbprg import (FiniteDistribution, PrgInstance, advantage, nb_advantage, stat_distance_max,
                    stat_distance_sum, subset_family_radius, theorem1_empirical_check)
from .puzzle import LampState, PuzzleGoal, min_moves, push, realize, solve_table
