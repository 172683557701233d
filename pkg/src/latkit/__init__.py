"""Finite lattice toolkit.

Lattices are stored as order matrices with precomputed meet and join tables.
On top of that sit a verified congruence engine (congruence lattices,
quotients, classification, permutability, polynomial isoform certificates),
order-pruned product constructions with closed-form meet/join formulas,
congruence-lattice representation by isoform lattices, cubic extensions, and
exhaustive small-lattice enumeration. Everything a construction claims is
re-checked on the concrete result; nothing is trusted from theory alone.
"""

from .congruence import (
    AlgIsoformResult,
    ClassifyResult,
    ConLattice,
    Congruence,
    CpeResult,
    PQResult,
    PermutabilityResult,
    check_properties_PQ,
    classify,
    con_lattice,
    full_congruence,
    identity_congruence,
    is_algebraically_isoform,
    is_congruence_permutable,
    is_cpe,
    principal,
    quotient,
)
from .constructions import (
    CubicExtensionResult,
    CubicFactor,
    PrunedProductSpec,
    SeparableFactor,
    cubic_extension,
    default_separator,
    forks,
    m_lattice,
    n_construction,
    nab_formula_join,
    nab_formula_meet,
    partition_lattice,
    pruned_product,
    represent_isoform,
    simple_extension,
    theorem_join,
    theorem_meet,
)
from .core import (
    Embedding,
    FiniteLattice,
    Poset,
    StructureReport,
    are_isomorphic,
    direct_product,
    downset_lattice,
    from_covers,
    interval,
    ji_poset,
    product_many,
    standard,
    structure_report,
)
from .enumeration import enumerate_lattices, enumerate_lattices_naive
from .errors import (
    BudgetExhausted,
    CapExceeded,
    ComparableInput,
    CycleDetected,
    FunctionSpaceCapExceeded,
    InternalVerificationFailed,
    LatticeError,
    NotALattice,
    NotALatticeUnderPruning,
    NotAnEmbedding,
    NotComparable,
    NotDistributive,
    NotSeparable,
    ParameterOutOfRange,
    SizeOverflow,
    UnknownName,
    VerificationFailed,
)
from .io import (
    export_dot,
    lattice_from_dict,
    lattice_to_dict,
    load_lattice,
    load_poset,
    poset_from_dict,
    poset_to_dict,
    save_lattice,
)

__version__ = "0.1.0"

__all__ = [
    "AlgIsoformResult",
    "BudgetExhausted",
    "CapExceeded",
    "ClassifyResult",
    "ComparableInput",
    "ConLattice",
    "Congruence",
    "CpeResult",
    "CubicExtensionResult",
    "CubicFactor",
    "CycleDetected",
    "Embedding",
    "FiniteLattice",
    "FunctionSpaceCapExceeded",
    "InternalVerificationFailed",
    "LatticeError",
    "NotALattice",
    "NotALatticeUnderPruning",
    "NotAnEmbedding",
    "NotComparable",
    "NotDistributive",
    "NotSeparable",
    "PQResult",
    "ParameterOutOfRange",
    "PermutabilityResult",
    "Poset",
    "PrunedProductSpec",
    "SeparableFactor",
    "SizeOverflow",
    "StructureReport",
    "UnknownName",
    "VerificationFailed",
    "are_isomorphic",
    "check_properties_PQ",
    "classify",
    "con_lattice",
    "cubic_extension",
    "default_separator",
    "direct_product",
    "downset_lattice",
    "enumerate_lattices",
    "enumerate_lattices_naive",
    "export_dot",
    "forks",
    "from_covers",
    "full_congruence",
    "identity_congruence",
    "interval",
    "is_algebraically_isoform",
    "is_congruence_permutable",
    "is_cpe",
    "ji_poset",
    "lattice_from_dict",
    "lattice_to_dict",
    "load_lattice",
    "load_poset",
    "m_lattice",
    "n_construction",
    "nab_formula_join",
    "nab_formula_meet",
    "partition_lattice",
    "poset_from_dict",
    "poset_to_dict",
    "principal",
    "product_many",
    "pruned_product",
    "quotient",
    "represent_isoform",
    "save_lattice",
    "simple_extension",
    "standard",
    "structure_report",
    "theorem_join",
    "theorem_meet",
]
