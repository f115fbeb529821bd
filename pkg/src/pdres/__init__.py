"""Divided-power dg resolutions, Yoneda algebras and homotopy Lie algebras
of commutative rings, with exact arithmetic."""

from .errors import (
    ConsistencyError,
    ContextError,
    PdresError,
    PreconditionError,
    ResourceCapError,
    SpecError,
)
from .field import Field, QQ, GF
from .ring import PolyRing, Poly, QuotientRing, buchberger, is_regular_sequence
from .pdalg import PDAlgebra, PDElement, divided_power, star_mul, differential
from .tate import RingSpec, TruncatedResolution, build, closed_form, verify_exactness
from .yoneda import (
    Derivation,
    ExtElement,
    HomotopyLieAlgebra,
    ext_dimension,
    ext_presentation,
    generator_count,
    homotopy_lie,
    lift_dual,
    yoneda_product,
)
from .reconstruct import RestrictedGradedLie, reconstruct, roundtrip_verify, validate_lie

__version__ = "0.1.0"
