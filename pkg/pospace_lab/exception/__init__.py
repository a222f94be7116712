from .custom_exception import (
    AnchorMismatchError,
    ConstructionError,
    InvalidPospaceError,
    ModelFormatError,
    MorphismMismatchError,
    PospaceLabException,
    SizeGuardExceeded,
)

__all__ = [
    "AnchorMismatchError",
    "ConstructionError",
    "InvalidPospaceError",
    "ModelFormatError",
    "MorphismMismatchError",
    "PospaceLabException",
    "SizeGuardExceeded",
]
