"""GNS construction for finite-dimensional C*-algebras, with executable checks of its categorical laws."""

__version__ = "0.1.0"

from .algebra import (
    Algebra,
    Element,
    StarMorphism,
    block_embed,
    compose_morphisms,
    conjugate_by_unitary,
    direct_sum_embed,
    identity,
    kron,
    morphism_catalog,
    tensor_left_inclusion,
    tensor_product,
    verify_morphism,
)
from .certificates import Certificate
from .estimator import GNSRepresentation
from .exceptions import (
    FdgnsError,
    PreconditionError,
    SchemaError,
    StructuralError,
    UnsupportedStructureError,
    ValidationError,
)
from .gns import (
    GnsRep,
    Intertwiner,
    PointedRep,
    gns_construct,
    gns_intertwiner,
    hom_count_pointed,
    is_cyclic,
    modification_m,
    pullback_pointed,
    rest,
)
from .states import (
    DensityMatrix,
    State,
    density_matrix_from_state,
    evaluate,
    gram_matrix,
    pullback_state,
    state_from_density_matrix,
    vector_state,
    verify_state,
)

__all__ = [
    "Certificate",
    "GNSRepresentation",
    "Algebra",
    "DensityMatrix",
    "Element",
    "FdgnsError",
    "GnsRep",
    "Intertwiner",
    "PointedRep",
    "PreconditionError",
    "SchemaError",
    "StarMorphism",
    "State",
    "StructuralError",
    "UnsupportedStructureError",
    "ValidationError",
    "block_embed",
    "compose_morphisms",
    "conjugate_by_unitary",
    "density_matrix_from_state",
    "direct_sum_embed",
    "evaluate",
    "gns_construct",
    "gns_intertwiner",
    "gram_matrix",
    "hom_count_pointed",
    "identity",
    "is_cyclic",
    "kron",
    "modification_m",
    "morphism_catalog",
    "pullback_pointed",
    "pullback_state",
    "rest",
    "state_from_density_matrix",
    "tensor_left_inclusion",
    "tensor_product",
    "vector_state",
    "verify_morphism",
    "verify_state",
]
