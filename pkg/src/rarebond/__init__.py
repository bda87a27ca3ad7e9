"""Rare correlated itemset mining under the bond (Jaccard) measure.

Mines the patterns that are simultaneously rare and correlated, computes
three exact concise representations and one approximate one, and answers
membership/support queries or full regeneration from them.
"""

from .db import TransactionDatabase, as_pattern, load_database, parse_database
from .measures import (MeasuredPattern, bond, conjunctive_support,
                       cross_support_trivial_threshold, cross_support_violates,
                       disjunctive_support, measure, negative_support)
from .closure import (ClosureTriple, closure_triple, conjunctive_closure,
                      disjunctive_closure, f_bond_closure, is_minimal_correlated)
from .miner import (MiningParams, MiningStatistics, Representation,
                    RepresentationKind, RoleFlaggedPattern, apriori_gen,
                    collect_statistics, derive_rminmf, derive_rminmmaxf,
                    derive_rmmaxf, extract_mcmax, mine_mcr, mine_rmcr)
from .represent import (BoundsAnswer, QueryAnswer, approximate_query,
                        dump_representation, load_representation,
                        parse_representation, query_pattern, regenerate_all,
                        save_representation)
from . import errors, kernels, oracle

__version__ = "0.1.0"

__all__ = [
    "TransactionDatabase", "as_pattern", "load_database", "parse_database",
    "MeasuredPattern", "bond", "conjunctive_support", "disjunctive_support",
    "negative_support", "measure", "cross_support_violates",
    "cross_support_trivial_threshold",
    "ClosureTriple", "closure_triple", "conjunctive_closure",
    "disjunctive_closure", "f_bond_closure", "is_minimal_correlated",
    "MiningParams", "MiningStatistics", "Representation", "RepresentationKind",
    "RoleFlaggedPattern", "apriori_gen", "collect_statistics", "extract_mcmax",
    "mine_mcr", "mine_rmcr", "derive_rmmaxf", "derive_rminmf", "derive_rminmmaxf",
    "QueryAnswer", "BoundsAnswer", "query_pattern", "approximate_query",
    "regenerate_all", "dump_representation", "parse_representation",
    "save_representation", "load_representation",
    "errors", "kernels", "oracle",
]
