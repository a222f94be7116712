from pospace_lab.homotopy.engine import (
    DihomotopyClasses,
    DimapSpace,
    EquivalenceVerdict,
    HomotopyVerdict,
    classes,
    common_upper_bound,
    cylinder_formulation,
    cylinder_homotopic,
    cylinder_partition,
    cylinder_slices,
    dihomotopic,
    dimap_space,
    fence_to_cylinder,
    is_dihomotopy_equivalence,
    p_homotopic,
    partition,
    path_formulation,
    path_partition,
    upper_bound_partition,
)

__all__ = [
    "DihomotopyClasses",
    "DimapSpace",
    "EquivalenceVerdict",
    "HomotopyVerdict",
    "classes",
    "common_upper_bound",
    "cylinder_formulation",
    "cylinder_homotopic",
    "cylinder_partition",
    "cylinder_slices",
    "dihomotopic",
    "dimap_space",
    "fence_to_cylinder",
    "is_dihomotopy_equivalence",
    "p_homotopic",
    "partition",
    "path_formulation",
    "path_partition",
    "upper_bound_partition",
]
