"""Exact root-system, Schubert-calculus, and eigencone computations."""

from .errors import (
    ConfigurationError,
    EigenconesError,
    ResourceCapError,
    UsageError,
    VerificationError,
)
from .rootsys import (
    RootSystem,
    SubsystemEmbedding,
    Weight,
    build_embedding,
    build_root_system,
)
from .weyl import (
    ParabolicSpec,
    WeylElement,
    dual_rep,
    embed_element,
    generate_weyl_group,
    longest_element,
    minimal_coset_reps,
    word_str,
    word_to_element,
)
from .schubert import (
    CohomClass,
    FlagVariety,
    flag_variety,
    point_product_tuples,
    structure_constants,
)
from .isogr import (
    IndexSet,
    dim_from_index,
    lift_index,
    orbit_dims,
    weyl_index_bijection,
)
from .cones import (
    Inequality,
    IneqSystem,
    generate_inequalities,
    include_weight_BC,
    membership,
    project_weight_BC,
    verify_projection,
    verify_subeigencone,
)
from .oracle import (
    CharacterTable,
    invariant_dim,
    saturated_search,
    tensor_decompose,
    weight_multiplicities,
    weyl_dim,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
