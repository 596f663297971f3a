"""Computable pixelations of hom-thin path categories."""

from .core_model import (
    AuslanderChain,
    FiniteThinCategory,
    Free,
    InputError,
    MaxLength,
    PathModel,
    hom_nonzero,
    is_zero_object,
)
from .screens import Boundary, FinitePartition, Owner, Screen, ScreenFactor

__version__ = "0.1.0"
