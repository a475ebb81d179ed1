"""Flippability of Heegaard splittings of totally orientable Seifert fibered spaces."""

from .classifier import (ConsistencyReport, OracleStatus, Outcome, Rule, Verdict,
                         classify_flippability, oracle_consistency_check)
from .nielsen import (FiniteGroupTable, cyclic_group, evaluate_word, generates,
                      nielsen_equivalent_finite, nielsen_neighbors)
from .presentations import (FinitePresentation, Generator, Word, abelianization, free_reduce,
                            fundamental_group, quotient_by_h, quotient_by_horizontal)
from .seifert import (INFINITE, ExceptionalFiber, ManifoldClass, ManifoldKind,
                      SeifertInvariants, classify_manifold, euler_number, first_homology_order,
                      validate)
from .splittings import (Case, SplittingDescriptor, VerticalSplitting, enumerate_vertical,
                         genus_of, induced_generating_systems, is_stabilized)

__version__ = "0.1.0"
