from pospace_lab.constructions.limits import (
    Cocone,
    Cone,
    QuotientTrace,
    UnderCocone,
    UnderCone,
    coequalizer,
    copair_from,
    coproduct,
    equalizer,
    pair_into,
    product,
    product_name,
    pullback,
    pushout,
    quotient,
    under_copair_from,
    under_pair_into,
    under_product,
    under_pullback,
    under_pushout,
)
from pospace_lab.constructions.square import (
    Cylinder,
    cylinder,
    cylinder_ends,
    square_c,
    square_c_map,
    square_c_via_pushout,
    square_point,
)
from pospace_lab.constructions.universal import (
    Diagram,
    UniversalResult,
    check_universal,
    cocone_commutes,
    cone_commutes,
    parallel_diagram,
    pullback_diagram,
    pushout_diagram,
)

__all__ = [
    "Cocone",
    "Cone",
    "Cylinder",
    "Diagram",
    "QuotientTrace",
    "UnderCocone",
    "UnderCone",
    "UniversalResult",
    "check_universal",
    "cocone_commutes",
    "coequalizer",
    "cone_commutes",
    "copair_from",
    "coproduct",
    "cylinder",
    "cylinder_ends",
    "equalizer",
    "pair_into",
    "parallel_diagram",
    "product",
    "product_name",
    "pullback",
    "pullback_diagram",
    "pushout",
    "pushout_diagram",
    "quotient",
    "square_c",
    "square_c_map",
    "square_c_via_pushout",
    "square_point",
    "under_copair_from",
    "under_pair_into",
    "under_product",
    "under_pullback",
    "under_pushout",
]
