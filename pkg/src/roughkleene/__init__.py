"""Finite rough set algebras and regular pseudocomplemented Kleene algebras."""

__version__ = "0.1.0"

from .algebra import (
    AXIOMS,
    AxiomReport,
    AxiomVerdict,
    PKAlgebra,
    are_isomorphic,
    axiom_report,
    dual_pseudocomplement_table,
    enumerate_kleene_negations,
    find_embedding,
    is_homomorphism,
    pk_algebra,
    pseudocomplement_table,
    rds_from_rpk,
    rpk_from_rds,
    subalgebra_generated,
)
from .errors import *  # noqa: F403
from .kvspace import (
    KVSpace,
    enumerate_kv_spaces,
    is_double_stone_frame,
    kv_space,
    levels,
    neg_on_upsets,
    stonean_star,
    upset_algebra,
    validate_kv,
)
from .order import (
    Lattice,
    Poset,
    UpsetFamily,
    all_upsets,
    is_disjoint_short_chains,
    is_distributive,
    join_irreducibles,
    lattice_of,
    max_chain_length,
    poset_from_covers,
    upward_closure,
)
from .representation import (
    PrimeFilter,
    RepresentationWitness,
    canonical_embedding_h,
    check_prime_chain_regularity,
    check_stonean_equivalence,
    g_of_prime_filter,
    kv_space_of_algebra,
    prime_filters,
    verify_theorem_main,
    verify_theorem_mainB,
)
from .roughsets import (
    Covering,
    FiniteRelation,
    RoughPair,
    RSSystem,
    classify_relation,
    induced_tolerance,
    is_irredundant,
    lower_approx,
    rough_equal,
    rs_algebra_equivalence,
    rs_algebra_quasiorder,
    rs_algebra_tolerance,
    rs_system,
    upper_approx,
    verify_lattice_formulas,
)
