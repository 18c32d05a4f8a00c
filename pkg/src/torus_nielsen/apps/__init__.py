"""
Minimum numbers of fixed circles for fiber-preserving maps of torus bundles
over the circle.

A fiber-preserving map of a T^2-bundle whose fiber map induces
``[[1, b12], [0, b22]]`` and sends the loop of the base to ``a^c1 b^c2``
is a homotopy on T^2, and its fixed circles are counted by the one-parameter
Nielsen number. For the trivial S^1-bundle (the 2-torus) with ``g(x, t) =
(x + k t, t)`` the count is ``|k|``.

Examples:
    >>> bundle_T2_min_circles(T2BundleMapData(b12=0, b22=-1, c1=2, c2=1))
    4
    >>> bundle_S1_min_circles(-4)
    4
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional

from torus_nielsen.descriptor import HomotopyDescriptor
from torus_nielsen.errors import MalformedInput
from torus_nielsen.oracle import LinearHomotopy, choose_generic_epsilon

logger = logging.getLogger(__name__)

MONODROMY_CASES = ("II", "III", "IV")


@dataclass(frozen=True)
class T2BundleMapData:
    """Fiber data ``f#(b) = a^b12 b^b22`` and ``f#(c0) = a^c1 b^c2 c0``.

    ``case`` names the monodromy family of the bundle (II: identity,
    III: ``[[1, a12], [0, 1]]``, IV: ``[[1, a12], [0, -1]]``); it is carried
    along but does not enter the count.
    """
    b12: int
    b22: int
    c1: int
    c2: int
    case: Optional[str] = None

    def __post_init__(self):
        if self.case is not None and self.case not in MONODROMY_CASES:
            raise MalformedInput(f"unknown monodromy case {self.case!r}",
                                 f"one of {', '.join(MONODROMY_CASES)}")


def bundle_T2_min_circles(d: T2BundleMapData) -> int:
    """``|c1 (b22 - 1) - c2 b12|``.

    >>> bundle_T2_min_circles(T2BundleMapData(b12=1, b22=1, c1=0, c2=3))
    3
    """
    return abs(d.c1 * (d.b22 - 1) - d.c2 * d.b12)


def bundle_S1_min_circles(k: int) -> int:
    return abs(k)


def bundle_T2_descriptor(d: T2BundleMapData) -> HomotopyDescriptor:
    return HomotopyDescriptor.create([[1, d.b12], [0, d.b22]], [d.c1, d.c2])


def bundle_S1_descriptor(k: int) -> HomotopyDescriptor:
    return HomotopyDescriptor.create([[1]], [k])


def bundle_T2_homotopy(d: T2BundleMapData, seed: Optional[int] = None) -> LinearHomotopy:
    """The representative ``G((x, y), t) = (x + b12 y + c1 t + ε1, b22 y + c2 t + ε2)``
    with a generic small ``ε``.
    """
    desc = bundle_T2_descriptor(d)
    epsilon = choose_generic_epsilon(desc, seed)
    logger.debug("bundle map %s uses epsilon %s", d, epsilon)
    return LinearHomotopy(desc, epsilon)
