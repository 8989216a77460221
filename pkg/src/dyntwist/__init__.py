"""Dynamical twists from generalized Verma modules over Levi subalgebras, with exact checks of
the shifted cocycle, the dynamical Yang-Baxter equations, and quantized coadjoint orbits."""
from .errors import (
    ClosureError,
    ConfigError,
    DepthExceeded,
    DepthInsufficient,
    DyntwistError,
    NonGeneric,
    NotDecidable,
    WeightMismatch,
)
from .intertwine import build_intertwiner, hom_dimension, verify_intertwiner
from .repcat import cg_projections, defining, irrep, trivial
from .rootdata import build_sl, levi
from .scalars import RatFunc
from .twist import (
    TwistEngine,
    dynamical_twist,
    verify_cdybe,
    verify_qdybe,
    verify_shifted_cocycle,
)

__version__ = "0.1.0"

__all__ = [
    "ClosureError",
    "ConfigError",
    "DepthExceeded",
    "DepthInsufficient",
    "DyntwistError",
    "NonGeneric",
    "NotDecidable",
    "RatFunc",
    "TwistEngine",
    "WeightMismatch",
    "build_intertwiner",
    "build_sl",
    "cg_projections",
    "defining",
    "dynamical_twist",
    "hom_dimension",
    "irrep",
    "levi",
    "trivial",
    "verify_cdybe",
    "verify_intertwiner",
    "verify_qdybe",
    "verify_shifted_cocycle",
]
