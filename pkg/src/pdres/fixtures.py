"""Standard example rings: the simple singularities and a few small rings."""

from __future__ import annotations

from .field import Field
from .tate import RingSpec

# simple singularities k[x,y,z]/(c)
ADE = {
    "A1": "x^2 + y*z",
    "A2": "x^3 + y*z",
    "A3": "x^4 + y*z",
    "D4": "x^3 + x*y^2 + z^2",
    "E6": "x^4 + y^3 + z^2",
    "E7": "x^3 + x*y^3 + z^2",
    "E8": "x^5 + y^3 + z^2",
}

# nonzero brackets [alpha_i, alpha_j] and q(alpha_i), as beta-coordinates,
# indexed by variable names
ADE_TABLE = {
    "A1": ({("x", "x"): 2, ("y", "z"): 1}, {"x": 1}),
    "A2": ({("y", "z"): 1}, {}),
    "A3": ({("y", "z"): 1}, {}),
    "D4": ({("z", "z"): 2}, {"z": 1}),
    "E6": ({("z", "z"): 2}, {"z": 1}),
    "E7": ({("z", "z"): 2}, {"z": 1}),
    "E8": ({("z", "z"): 2}, {"z": 1}),
}

OTHER = {
    "dual-numbers": ("x", ["x^2"]),
    "koszul-xy": ("x, y", []),
    "x2-xy": ("x, y", ["x^2", "x*y"]),
    "cubics": ("x, y, z", ["x^3 + y^3 + z^3"]),
    "two-quadrics": ("x, y, z, w", ["x*y + z^2", "z*w + x^2"]),
}


def ade_spec(name: str, field: Field | str = "QQ") -> RingSpec:
    return RingSpec.parse(field, "x, y, z", [ADE[name]])


def other_spec(name: str, field: Field | str = "QQ") -> RingSpec:
    names, rels = OTHER[name]
    return RingSpec.parse(field, names, rels)
