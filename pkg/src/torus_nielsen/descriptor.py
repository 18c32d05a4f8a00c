"""The homotopy data every invariant is computed from: ``[φ]`` and the loop ``c``."""
from __future__ import annotations

import operator
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from torus_nielsen.errors import DimensionMismatch
from torus_nielsen.intlin import (IntMatrix, SmithDecomposition, integer_inverse,
                                  smith_normal_form)


@dataclass(frozen=True)
class HomotopyDescriptor:
    """A homotopy on the n-torus, up to the data the invariants see.

    ``phi`` is the matrix of the induced homomorphism and ``c`` the exponent
    vector of the loop traced by the basepoint, ``[w] = u1^c1 ... un^cn``.

    >>> d = HomotopyDescriptor.create([[1, 1], [0, 2]], [0, 1])
    >>> d.n, d.class_matrix.to_rows()
    (2, [[0, 1, 0], [0, 1, 1]])
    """
    phi: IntMatrix
    c: tuple

    def __post_init__(self):
        if not self.phi.is_square:
            raise DimensionMismatch(
                f"phi must be square, got {self.phi.rows}x{self.phi.cols}")
        if self.phi.rows < 1:
            raise DimensionMismatch("dimension must be at least 1")
        c = tuple(operator.index(x) for x in self.c)
        if len(c) != self.phi.rows:
            raise DimensionMismatch(
                f"c has {len(c)} entries, phi is {self.phi.rows}x{self.phi.rows}")
        object.__setattr__(self, "c", c)

    @classmethod
    def create(cls, phi: Sequence[Sequence[int]], c: Sequence[int]) -> "HomotopyDescriptor":
        return cls(IntMatrix.from_rows(phi), tuple(c))

    @property
    def n(self) -> int:
        return self.phi.rows

    @cached_property
    def phi_minus_identity(self) -> IntMatrix:
        return self.phi - IntMatrix.identity(self.n)

    @cached_property
    def class_matrix(self) -> IntMatrix:
        """``[(phi - I) | c]``: its column lattice separates semiconjugacy classes."""
        return self.phi_minus_identity.augment(self.c)

    @cached_property
    def class_smith(self) -> SmithDecomposition:
        return smith_normal_form(self.class_matrix)

    def conjugate(self, P: IntMatrix) -> "HomotopyDescriptor":
        """The same homotopy written in the basis given by the columns of ``P``.

        >>> d = HomotopyDescriptor.create([[2, -1], [1, 0]], [3, 1])
        >>> e = d.conjugate(IntMatrix.from_rows([[1, 0], [1, 1]]))
        >>> e.phi.to_rows(), e.c
        ([[1, -1], [0, 1]], (3, -2))
        """
        inverse = integer_inverse(P)
        return HomotopyDescriptor(inverse @ self.phi @ P, inverse @ self.c)
