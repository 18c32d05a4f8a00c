"""
One-parameter fixed point invariants of homotopies on the n-torus.

A homotopy is known here only through its :class:`HomotopyDescriptor`: the
matrix ``phi`` of the induced homomorphism and the exponent vector ``c`` of
the basepoint loop. When the classical Nielsen number ``|det(phi - I)|``
vanishes, ``phi`` has an eigenvector for 1; writing ``phi`` in a basis that
starts with it gives the matrix ``A`` and ``N(F) = |det A|``.

Examples:
    >>> one_param_nielsen(HomotopyDescriptor.create([[1]], [4])).N
    4
    >>> r = one_param_nielsen(HomotopyDescriptor.create([[1, 1], [0, 2]], [0, 1]))
    >>> r.N, r.alpha_direction, r.case.value
    (1, (1, 0), 'FULL_RANK')
    >>> one_param_nielsen(HomotopyDescriptor.create([[2, 0], [0, 2]], [1, 1])).case.value
    'CLASSICAL_NONZERO'
    >>> one_param_nielsen(HomotopyDescriptor.create([[1, 0], [0, 1]], [2, 3])).case.value
    'RANK_DEFICIENT'
"""
from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from enum import Enum
from functools import reduce
from typing import Dict, List, Optional, Tuple, Union

from torus_nielsen.descriptor import HomotopyDescriptor
from torus_nielsen.errors import ClassicalNonzero, NotReducedBasis
from torus_nielsen.hochschild import (Chain1, GroupElement, RingElement,
                                      change_basis, homology_coefficients,
                                      reduce_to_canonical, tensor_trace)
from torus_nielsen.intlin import (CokernelStructure, IntMatrix,
                                  cokernel_structure, exact_determinant,
                                  integer_inverse, kernel_basis,
                                  unimodular_complete)

__all__ = [
    "HomotopyDescriptor", "OneParamCase", "OneParamResult", "INFINITE",
    "classical_nielsen", "reduce_basis", "one_param_matrix", "one_param_nielsen",
    "lefschetz_class", "semiconjugacy_classes", "semicentralizer", "jezierski_D",
    "nielsen_from_invariant_factors", "circle_trace", "trace_components",
    "trace_nielsen", "trace_lefschetz",
]

logger = logging.getLogger(__name__)

INFINITE = "INFINITE"


class OneParamCase(str, Enum):
    CLASSICAL_NONZERO = "CLASSICAL_NONZERO"
    RANK_DEFICIENT = "RANK_DEFICIENT"
    FULL_RANK = "FULL_RANK"


@dataclass(frozen=True)
class OneParamResult:
    """``N(F)`` with the direction of ``L(F) = ±N(F)·alpha``.

    The sign of ``alpha`` depends on orientation choices, so only the
    primitive direction is reported and ``sign_ambiguous`` is set with it.
    """
    N: int
    alpha_direction: Optional[tuple]
    case: OneParamCase

    @property
    def sign_ambiguous(self) -> bool:
        return self.N > 0


# ═════════════════════════ basis reduction ═══════════════════════════
def classical_nielsen(phi: IntMatrix) -> int:
    """
    >>> classical_nielsen(IntMatrix.from_rows([[0, -1], [1, 0]]))
    2
    """
    return abs(exact_determinant(phi - IntMatrix.identity(phi.rows)))


def reduce_basis(desc: HomotopyDescriptor) -> Tuple[IntMatrix, HomotopyDescriptor]:
    """A unimodular ``P`` whose first column spans ker(phi - I), and the
    descriptor rewritten in that basis.

    >>> P, reduced = reduce_basis(HomotopyDescriptor.create([[2, -1], [1, 0]], [0, 0]))
    >>> P.to_rows(), reduced.phi.to_rows()
    ([[1, 0], [1, 1]], [[1, -1], [0, 1]])
    """
    if classical_nielsen(desc.phi):
        raise ClassicalNonzero(f"det(phi - I) != 0 for phi = {desc.phi}")
    w = kernel_basis(desc.phi_minus_identity)[0]
    P = unimodular_complete(w)
    return P, desc.conjugate(P)


def one_param_matrix(reduced: HomotopyDescriptor) -> IntMatrix:
    """Columns 2..n of ``phi - I`` followed by ``c``.

    >>> one_param_matrix(HomotopyDescriptor.create([[1, 1], [0, 2]], [0, 1])).to_rows()
    [[1, 0], [1, 1]]
    """
    if reduced.phi.column(0) != GroupElement.generator(reduced.n, 0).exponents:
        raise NotReducedBasis(
            f"first column of phi must be e1, got {reduced.phi.column(0)}")
    return reduced.phi_minus_identity.drop_column(0).augment(reduced.c)


def one_param_nielsen(desc: HomotopyDescriptor) -> OneParamResult:
    if classical_nielsen(desc.phi):
        logger.debug("classical Nielsen number is nonzero; N(F) = 0")
        return OneParamResult(0, None, OneParamCase.CLASSICAL_NONZERO)
    P, reduced = reduce_basis(desc)
    A = one_param_matrix(reduced)
    det = exact_determinant(A)
    if det == 0:
        logger.debug("A = %s is singular; N(F) = 0", A)
        return OneParamResult(0, None, OneParamCase.RANK_DEFICIENT)
    logger.debug("A = %s, det A = %d", A, det)
    return OneParamResult(abs(det), P.column(0), OneParamCase.FULL_RANK)


def lefschetz_class(desc: HomotopyDescriptor) -> Tuple[int, Optional[tuple], bool]:
    """``(N, alpha, True)``: ``L(F) = ±N·alpha`` in H1(T^n) = Z^n.

    >>> lefschetz_class(HomotopyDescriptor.create([[2, 0], [0, 2]], [5, 1]))
    (0, None, True)
    """
    result = one_param_nielsen(desc)
    return result.N, result.alpha_direction, True


# ═════════════════════ classes and cross checks ══════════════════════
def semiconjugacy_classes(
        desc: HomotopyDescriptor) -> Tuple[CokernelStructure, Union[List[GroupElement], str]]:
    """Cosets of the lattice spanned by ``phi - I`` and ``c``.

    >>> structure, reps = semiconjugacy_classes(HomotopyDescriptor.create([[1]], [3]))
    >>> structure.order, [r.exponents for r in reps]
    (3, [(0,), (1,), (2,)])
    >>> semiconjugacy_classes(HomotopyDescriptor.create([[1, 0], [0, 1]], [0, 0]))[1]
    'INFINITE'
    """
    structure = cokernel_structure(desc.class_matrix)
    if not structure.is_finite:
        return structure, INFINITE
    snf = desc.class_smith
    U_inverse = integer_inverse(snf.U)
    box = [range(d) for d in snf.diagonal]
    representatives = sorted(GroupElement(U_inverse @ y) for y in itertools.product(*box))
    return structure, representatives


def semicentralizer(desc: HomotopyDescriptor) -> List[tuple]:
    """ker(phi - I); the same for every element."""
    return kernel_basis(desc.phi_minus_identity)


def jezierski_D(desc: HomotopyDescriptor) -> int:
    """gcd of the n×n minors of ``[(phi - I) | c]``.

    >>> jezierski_D(HomotopyDescriptor.create([[1]], [3]))
    3
    >>> jezierski_D(HomotopyDescriptor.create([[1, 0], [0, 1]], [2, 4]))
    0
    """
    B = desc.class_matrix
    return reduce(math.gcd, (abs(exact_determinant(B.drop_column(j)))
                             for j in range(B.cols)), 0)


def nielsen_from_invariant_factors(desc: HomotopyDescriptor) -> int:
    """Order of the class group when it is finite and ``phi`` has eigenvalue 1.

    >>> nielsen_from_invariant_factors(HomotopyDescriptor.create([[1, 2], [0, -1]], [1, 1]))
    4
    """
    if classical_nielsen(desc.phi):
        return 0
    return cokernel_structure(desc.class_matrix).order or 0


# ══════════════════════════════ traces ═══════════════════════════════
def circle_trace(c: int) -> Chain1:
    """The trace of ``F(x, t) = x + c·t`` on the circle.

    The boundary of the lifted 1-cell is ``u⁻¹ - 1``; the chain homotopy
    collects the ``|c|`` lifted cells the basepoint sweeps through.

    >>> print(circle_trace(2))
    u1^-1⊗u1^-1 + u1^-1⊗1 - 1⊗u1^-1 - 1⊗1
    >>> trace_nielsen(circle_trace(-3), HomotopyDescriptor.create([[1]], [-3]))
    3
    """
    one, u = GroupElement((0,)), GroupElement((1,))
    boundary = [[RingElement.of(u.inverse()) - RingElement.of(one)]]
    exponents = range(0, -c, -1) if c > 0 else range(1, -c + 1)
    sweep = RingElement(tuple((1 if c > 0 else -1, u ** e) for e in exponents))
    return tensor_trace(boundary, [[sweep]], phi=IntMatrix.identity(1))


def trace_components(ch: Chain1, desc: HomotopyDescriptor) -> Dict[GroupElement, int]:
    """The C-components of a trace, keyed by a marker in the original basis."""
    if classical_nielsen(desc.phi):
        return {}
    P, reduced = reduce_basis(desc)
    canonical, _ = reduce_to_canonical(change_basis(ch, P))
    coefficients = homology_coefficients(canonical, reduced)
    return {GroupElement(P @ rep.exponents): k for rep, k in coefficients.items()}


def trace_nielsen(ch: Chain1, desc: HomotopyDescriptor) -> int:
    """Number of nonzero C-components."""
    return len(trace_components(ch, desc))


def trace_lefschetz(ch: Chain1, desc: HomotopyDescriptor) -> tuple:
    """Image of the trace in H1(T^n) = Z^n.

    >>> trace_lefschetz(circle_trace(2), HomotopyDescriptor.create([[1]], [2]))
    (-2,)
    """
    components = trace_components(ch, desc)
    if not components:
        return (0,) * desc.n
    P, _ = reduce_basis(desc)
    total = sum(components.values())
    return tuple(total * a for a in P.column(0))
