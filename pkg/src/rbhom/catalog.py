"""Small reference algebras over the two-element group ``{e, s}``."""

from __future__ import annotations

from .algebra import FiniteSemigroup, HomAlgebra
from .scalars import LAMBDA

S2 = FiniteSemigroup.z2()
L = LAMBDA


def idempotent_line() -> HomAlgebra:
    """``e1*e1 = e1``, identity twist, zero operators."""
    return HomAlgebra.build(S2, ["e1"], mul={(0, 0): [1]})


def rb_idempotent_line(name: str = "e2") -> HomAlgebra:
    """``e2*e2 = e2``, identity twist, both operators ``-l * Id``."""
    return HomAlgebra.build(S2, [name], mul={(0, 0): [1]}, P={"e": {0: [-L]}, "s": {0: [-L]}})


def twisted_plane() -> HomAlgebra:
    """Two-dimensional algebra containing ``idempotent_line`` as ``span{e1}``."""
    return HomAlgebra.build(
        S2, ["e1", "e2"],
        mul={(0, 0): [1, 0], (0, 1): [-3, 2], (1, 0): [3, 0], (1, 1): [-9, 6]},
        theta={1: [-3, 2]},
        P={"e": {1: [3 * L, -L]}, "s": {1: [3 * L, -L]}},
    )
