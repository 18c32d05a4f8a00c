"""
Hochschild chains of the group ring Z[Z^n] with coefficients twisted by φ.

A 1-chain is a formal sum of terms ``a · B ⊗ D`` and a 2-chain of terms
``a · B ⊗ D ⊗ E``, with ``B, D, E`` group elements written as exponent
vectors. The bimodule action is ``m · g = m φ(g)``, which gives

    d1(B ⊗ D)     = D φ(B) - B D
    d2(B ⊗ D ⊗ E) = D ⊗ E φ(B) - B D ⊗ E + B ⊗ D E

Examples:
    >>> phi = IntMatrix.from_rows([[1, 1], [0, 2]])
    >>> u1u2 = GroupElement((1, 1))
    >>> print(boundary_d1(Chain1(phi, [(1, u1u2, GroupElement.identity(2))])))
    -u1·u2 + u1^2·u2^2

    ``1 ⊗ m`` is always a boundary:
    >>> m = GroupElement((3, -1))
    >>> one = GroupElement.identity(2)
    >>> boundary_d2(Chain2(phi, [(1, one, one, m)])) == Chain1(phi, [(1, one, m)])
    True
"""
from __future__ import annotations

import logging
import operator
from dataclasses import dataclass
from typing import Dict, Iterable, Sequence, Tuple

from torus_nielsen.descriptor import HomotopyDescriptor
from torus_nielsen.errors import (DimensionMismatch, InvariantViolation,
                                  NotACycle, NotReducedBasis, RankPrecondition,
                                  ReductionIncomplete, TorusNielsenError)
from torus_nielsen.intlin import (IntMatrix, integer_inverse, matrix_rank,
                                  smith_normal_form)

logger = logging.getLogger(__name__)


# ══════════════════════════ group and ring ═══════════════════════════
@dataclass(frozen=True, order=True)
class GroupElement:
    """``u1^k1 ··· un^kn`` in the free abelian group Z^n."""
    exponents: tuple

    def __post_init__(self):
        object.__setattr__(self, "exponents",
                           tuple(operator.index(k) for k in self.exponents))

    @classmethod
    def identity(cls, n: int) -> "GroupElement":
        return cls((0,) * n)

    @classmethod
    def generator(cls, n: int, i: int, power: int = 1) -> "GroupElement":
        """``u_{i+1}^power`` (``i`` is zero-based)."""
        return cls(tuple(power if j == i else 0 for j in range(n)))

    @property
    def n(self) -> int:
        return len(self.exponents)

    @property
    def is_identity(self) -> bool:
        return not any(self.exponents)

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        if self.n != other.n:
            raise DimensionMismatch(f"Z^{self.n} element times Z^{other.n} element")
        return GroupElement(tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def inverse(self) -> "GroupElement":
        return GroupElement(tuple(-a for a in self.exponents))

    def __truediv__(self, other: "GroupElement") -> "GroupElement":
        return self * other.inverse()

    def __pow__(self, k: int) -> "GroupElement":
        return GroupElement(tuple(k * a for a in self.exponents))

    def __str__(self):
        factors = [f"u{i + 1}" if k == 1 else f"u{i + 1}^{k}"
                   for i, k in enumerate(self.exponents) if k]
        return "·".join(factors) or "1"


def _collect(terms: Iterable[tuple]) -> tuple:
    """Combine ``(coeff, *key)`` tuples with equal keys and drop zeros."""
    acc: Dict[tuple, int] = {}
    for coeff, *key in terms:
        key = tuple(key)
        acc[key] = acc.get(key, 0) + operator.index(coeff)
    return tuple((coeff, *key) for key, coeff in sorted(acc.items()) if coeff)


def _format(terms: tuple, render) -> str:
    if not terms:
        return "0"
    parts = []
    for k, (coeff, *key) in enumerate(terms):
        body = render(*key)
        if k == 0:
            parts.append(("-" if coeff < 0 else "") + _magnitude(coeff) + body)
        else:
            parts.append((" - " if coeff < 0 else " + ") + _magnitude(coeff) + body)
    return "".join(parts)


def _magnitude(coeff: int) -> str:
    return "" if abs(coeff) == 1 else f"{abs(coeff)}·"


@dataclass(frozen=True)
class RingElement:
    """An element of Z[Z^n] stored as sorted ``(coeff, g)`` pairs, no zeros.

    >>> u = GroupElement((1,))
    >>> x = RingElement.of(u) - RingElement.of(GroupElement((0,)))
    >>> print(x * x)
    1 - 2·u1 + u1^2
    """
    terms: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "terms", _collect(self.terms))

    @classmethod
    def of(cls, g: GroupElement, coeff: int = 1) -> "RingElement":
        return cls(((coeff, g),))

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other: "RingElement") -> "RingElement":
        return RingElement(self.terms + other.terms)

    def __neg__(self) -> "RingElement":
        return RingElement(tuple((-c, g) for c, g in self.terms))

    def __sub__(self, other: "RingElement") -> "RingElement":
        return self + (-other)

    def __mul__(self, other: "RingElement") -> "RingElement":
        return RingElement(tuple((a * b, g * h) for a, g in self.terms
                                 for b, h in other.terms))

    def scale(self, k: int) -> "RingElement":
        return RingElement(tuple((k * c, g) for c, g in self.terms))

    def __str__(self):
        return _format(self.terms, str)


# ═════════════════════════════ chains ════════════════════════════════
def _check_terms(phi: IntMatrix, terms: tuple):
    if not phi.is_square:
        raise DimensionMismatch(f"phi must be square, got {phi.rows}x{phi.cols}")
    for coeff, *elements in terms:
        for g in elements:
            if g.n != phi.rows:
                raise DimensionMismatch(
                    f"term element {g} lives in Z^{g.n}, phi acts on Z^{phi.rows}")


class _ChainOps:
    """Linear structure shared by 1- and 2-chains."""

    def __bool__(self):
        return bool(self.terms)

    def _same_twist(self, other):
        if self.phi != other.phi:
            raise DimensionMismatch("chains are twisted by different matrices")

    def __add__(self, other):
        self._same_twist(other)
        return type(self)(self.phi, self.terms + other.terms)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k: int):
        return type(self)(self.phi, tuple((k * c, *rest) for c, *rest in self.terms))

    @property
    def n(self) -> int:
        return self.phi.rows


@dataclass(frozen=True)
class Chain1(_ChainOps):
    """``Σ a · B ⊗ D`` with like terms combined, twisted by ``phi``."""
    phi: IntMatrix
    terms: tuple = ()

    def __post_init__(self):
        terms = _collect(self.terms)
        _check_terms(self.phi, terms)
        object.__setattr__(self, "terms", terms)

    def __str__(self):
        return _format(self.terms, lambda B, D: f"{B}⊗{D}")


@dataclass(frozen=True)
class Chain2(_ChainOps):
    """``Σ a · B ⊗ D ⊗ E`` with like terms combined, twisted by ``phi``."""
    phi: IntMatrix
    terms: tuple = ()

    def __post_init__(self):
        terms = _collect(self.terms)
        _check_terms(self.phi, terms)
        object.__setattr__(self, "terms", terms)

    def __str__(self):
        return _format(self.terms, lambda B, D, E: f"{B}⊗{D}⊗{E}")


# ═══════════════════════════ operations ══════════════════════════════
def apply_phi(phi: IntMatrix, g: GroupElement) -> GroupElement:
    """
    >>> apply_phi(IntMatrix.from_rows([[1, 1], [0, 2]]), GroupElement((1, 1)))
    GroupElement(exponents=(2, 2))
    """
    if phi.cols != g.n:
        raise DimensionMismatch(f"phi is {phi.rows}x{phi.cols}, element lives in Z^{g.n}")
    return GroupElement(phi @ g.exponents)


def boundary_d1(ch: Chain1) -> RingElement:
    return RingElement(tuple(
        term
        for a, B, D in ch.terms
        for term in ((a, D * apply_phi(ch.phi, B)), (-a, B * D))))


def boundary_d2(ch: Chain2) -> Chain1:
    out = []
    for a, B, D, E in ch.terms:
        out += [(a, D, E * apply_phi(ch.phi, B)),
                (-a, B * D, E),
                (a, B, D * E)]
    return Chain1(ch.phi, out)


def tensor_trace(P: Sequence[Sequence[RingElement]],
                 Q: Sequence[Sequence[RingElement]],
                 sign: int = 1, *, phi: IntMatrix) -> Chain1:
    """``sign · Σ_{i,j} P[i][j] ⊗ Q[j][i]`` expanded bilinearly.

    >>> phi = IntMatrix.identity(2)
    >>> u1, u2 = GroupElement((1, 0)), GroupElement((0, 1))
    >>> P = [[RingElement.of(GroupElement.identity(2)) - RingElement.of(u1.inverse())]]
    >>> print(tensor_trace(P, [[RingElement.of(u2)]], phi=phi))
    -u1^-1⊗u2 + 1⊗u2
    """
    if sign not in (1, -1):
        raise TorusNielsenError(f"sign must be +1 or -1, got {sign}")
    r = len(P)
    s = len(P[0]) if r else len(Q)
    if any(len(row) != s for row in P) or len(Q) != s or any(len(row) != r for row in Q):
        raise DimensionMismatch(
            f"trace needs P r×s and Q s×r, got {r}x{s} and "
            f"{len(Q)}x{len(Q[0]) if Q else 0}")
    terms = [(sign * a * b, g, h)
             for i in range(r) for j in range(s)
             for a, g in P[i][j].terms
             for b, h in Q[j][i].terms]
    return Chain1(phi, terms)


def marker(B: GroupElement, D: GroupElement) -> GroupElement:
    """The element ``B·D`` marking the semiconjugacy class of ``B ⊗ D``."""
    return B * D


def same_class(g1: GroupElement, g2: GroupElement, desc: HomotopyDescriptor) -> bool:
    """
    >>> d = HomotopyDescriptor.create([[1]], [3])
    >>> same_class(GroupElement((-1,)), GroupElement((2,)), d)
    True
    >>> same_class(GroupElement((0,)), GroupElement((1,)), d)
    False
    """
    if g1.n != desc.n or g2.n != desc.n:
        raise DimensionMismatch(
            f"elements of Z^{g1.n} and Z^{g2.n} for a homotopy on T^{desc.n}")
    return desc.class_smith.solve((g2 / g1).exponents) is not None


def decompose_components(ch: Chain1, desc: HomotopyDescriptor) -> Dict[GroupElement, Chain1]:
    """Split ``ch`` by semiconjugacy class of the term markers.

    Each class is keyed by the least marker met in it.

    >>> d = HomotopyDescriptor.create([[1]], [3])
    >>> u = lambda k: GroupElement((k,))
    >>> parts = decompose_components(Chain1(d.phi, [(1, u(-1), u(0)), (1, u(-1), u(1))]), d)
    >>> [str(rep) for rep in parts]
    ['u1^-1', '1']
    """
    if ch.phi != desc.phi:
        raise DimensionMismatch("chain and homotopy have different phi")
    classes: Dict[GroupElement, list] = {}
    for term in sorted(ch.terms, key=lambda t: (marker(t[1], t[2]), t)):
        g = marker(term[1], term[2])
        home = next((rep for rep in classes if same_class(rep, g, desc)), g)
        classes.setdefault(home, []).append(term)
    return {rep: Chain1(ch.phi, terms) for rep, terms in classes.items()}


# ══════════════════════════ canonical form ═══════════════════════════
class _Reducer:
    """Rewrites a cycle into ``Σ a · u1 ⊗ D`` while recording a 2-chain
    certificate with ``ch - canonical = d2(certificate)``.

    Every rewrite replaces a term ``X`` by ``Y`` with ``X - Y = d2(K)`` and
    adds ``K`` to the certificate.
    """

    def __init__(self, phi: IntMatrix):
        self.phi = phi
        self.n = phi.rows
        self.u1 = GroupElement.generator(self.n, 0)
        self.canonical: list = []
        self.certificate: list = []
        self.edges: Dict[Tuple[int, GroupElement], int] = {}

    def gen(self, i: int, power: int = 1) -> GroupElement:
        return GroupElement.generator(self.n, i, power)

    def phi_of(self, g: GroupElement) -> GroupElement:
        return apply_phi(self.phi, g)

    # ---------- terms B ⊗ D ----------
    def add_term(self, a: int, B: GroupElement, D: GroupElement):
        k = B.exponents[0]
        rest = B / self.u1 ** k
        if k and not rest.is_identity:
            self.certificate.append((-a, self.u1 ** k, rest, D))
            self.kernel_term(a, k, rest * D)
            self.residue(a, rest, D * self.u1 ** k)
        elif k:
            self.kernel_term(a, k, D)
        else:
            self.residue(a, B, D)

    def kernel_term(self, a: int, k: int, X: GroupElement):
        """``a · u1^k ⊗ X`` becomes ``a·k · u1 ⊗ u1^(k-1) X``."""
        u1 = self.u1
        if k == 0:
            self.certificate.append((a, GroupElement.identity(self.n),
                                     GroupElement.identity(self.n), X))
            return
        self.canonical.append((a * k, u1, u1 ** (k - 1) * X))
        if k > 0:
            for s in range(1, k):
                self.certificate.append((-a, u1 ** s, u1, u1 ** (k - 1 - s) * X))
        else:
            for j in range(-k):
                self.certificate.append((a, u1 ** (k + j), u1, u1 ** (-j - 1) * X))
            self.certificate.append((a, GroupElement.identity(self.n),
                                     GroupElement.identity(self.n), u1 ** k * X))

    def residue(self, a: int, B: GroupElement, E: GroupElement):
        """Peel ``B`` (first exponent 0) into single positive generators."""
        one = GroupElement.identity(self.n)
        stack = [(a, B, E)]
        while stack:
            a, B, E = stack.pop()
            if B.is_identity:
                self.certificate.append((a, one, one, E))
                continue
            i = next(i for i, k in enumerate(B.exponents) if k)
            g = self.gen(i, 1 if B.exponents[i] > 0 else -1)
            rest = B / g
            if not rest.is_identity:
                self.certificate.append((-a, g, rest, E))
                stack.append((a, g, rest * E))
                stack.append((a, rest, E * self.phi_of(g)))
            elif B.exponents[i] > 0:
                self._add_edge(a, i, E)
            else:
                u = g.inverse()
                F = g * E
                self.certificate.append((a, g, u, F))
                self._add_edge(-a, i, F / self.phi_of(u))
                stack.append((a, one, F))

    # ---------- edges u_i ⊗ E, keyed by (i, source u_i·E) ----------
    def _add_edge(self, a: int, i: int, E: GroupElement):
        key = (i, self.gen(i) * E)
        self.edges[key] = self.edges.get(key, 0) + a
        if not self.edges[key]:
            del self.edges[key]

    def _add_edge_at(self, a: int, i: int, source: GroupElement):
        self._add_edge(a, i, source / self.gen(i))

    def _square(self, a: int, i: int, j: int, base: GroupElement):
        """Record ``a · (u_i ⊗ u_j ⊗ E - u_j ⊗ u_i ⊗ E)`` with ``u_i u_j E = base``."""
        E = base / (self.gen(i) * self.gen(j))
        self.certificate.append((a, self.gen(i), self.gen(j), E))
        self.certificate.append((-a, self.gen(j), self.gen(i), E))

    def cancel_edges(self):
        """Cancel the residual cycle built from edges ``u_i ⊗ E`` with i >= 2.

        An edge of type ``i`` runs from ``u_i E`` to ``E φ(u_i)``, a step of
        ``v_i = (φ - I) e_i``. The steps are independent, so a cycle can be
        filled by squares: edges of the highest type are slid onto the axis
        of their level, where they cancel; then the next type is processed.
        """
        if not self.edges:
            return
        columns = [self.phi_minus_identity_column(i) for i in range(1, self.n)]
        steps = IntMatrix.from_columns(columns, rows=self.n)
        steps_smith = smith_normal_form(steps)
        bases: list = []

        def coordinates(vertex: GroupElement) -> list:
            for base in bases:
                solution = steps_smith.solve((vertex / base).exponents)
                if solution is not None:
                    return list(solution)
            bases.append(vertex)
            return [0] * len(columns)

        step = {i: GroupElement(columns[i - 1]) for i in range(1, self.n)}
        for j in range(self.n - 1, 0, -1):
            for kind, source in sorted(self.edges):
                a = self.edges.get((kind, source), 0)
                if kind != j or not a:
                    continue
                lam = coordinates(source)
                for i in range(1, j):
                    while lam[i - 1] > 0:
                        lower = source / step[i]
                        self._add_edge_at(-a, j, source)
                        self._add_edge_at(a, j, lower)
                        self._add_edge_at(-a, i, lower)
                        self._add_edge_at(a, i, lower * step[j])
                        self._square(a, i, j, lower)
                        source, lam[i - 1] = lower, lam[i - 1] - 1
                    while lam[i - 1] < 0:
                        upper = source * step[i]
                        self._add_edge_at(-a, j, source)
                        self._add_edge_at(a, j, upper)
                        self._add_edge_at(a, i, source)
                        self._add_edge_at(-a, i, source * step[j])
                        self._square(-a, i, j, source)
                        source, lam[i - 1] = upper, lam[i - 1] + 1
            left = [key for key in self.edges if key[0] == j]
            if left:
                raise ReductionIncomplete(
                    f"residual terms of type u{j + 1} do not cancel: "
                    f"{[(self.edges[k], str(k[1])) for k in left]}")

    def phi_minus_identity_column(self, i: int) -> tuple:
        return tuple(self.phi[r, i] - (r == i) for r in range(self.n))


def _check_reduced_rank(phi: IntMatrix):
    n = phi.rows
    if matrix_rank(phi - IntMatrix.identity(n)) != n - 1:
        raise RankPrecondition(f"rank(phi - I) must be {n - 1} for phi = {phi}")


def reduce_to_canonical(ch: Chain1) -> Tuple[Chain1, Chain2]:
    """Rewrite a cycle as ``Σ a · u1 ⊗ D`` plus a boundary.

    Requires ``rank(phi - I) = n - 1`` and ``phi e1 = e1``.

    >>> phi = IntMatrix.from_rows([[1, 1], [0, 2]])
    >>> u1, one = GroupElement((1, 0)), GroupElement.identity(2)
    >>> canonical, certificate = reduce_to_canonical(Chain1(phi, [(1, u1 ** 2, one)]))
    >>> print(canonical)
    2·u1⊗u1
    >>> ch = Chain1(phi, [(1, u1.inverse(), one)])
    >>> canonical, certificate = reduce_to_canonical(ch)
    >>> print(canonical)
    -u1⊗u1^-2
    >>> ch - canonical == boundary_d2(certificate)
    True
    """
    phi, n = ch.phi, ch.n
    _check_reduced_rank(phi)
    if phi.column(0) != GroupElement.generator(n, 0).exponents:
        raise NotReducedBasis(f"first column of phi must be e1, got {phi.column(0)}")
    if boundary_d1(ch):
        raise NotACycle(f"d1 of the chain is {boundary_d1(ch)}")

    reducer = _Reducer(phi)
    for a, B, D in ch.terms:
        reducer.add_term(a, B, D)
    reducer.cancel_edges()

    canonical = Chain1(phi, reducer.canonical)
    certificate = Chain2(phi, reducer.certificate)
    if ch - canonical != boundary_d2(certificate):
        raise InvariantViolation(f"reduction certificate does not close for {ch}")
    logger.debug("reduced %d terms to %d canonical terms (%d certificate terms)",
                 len(ch.terms), len(canonical.terms), len(certificate.terms))
    return canonical, certificate


def homology_coefficients(canonical: Chain1,
                          desc: HomotopyDescriptor) -> Dict[GroupElement, int]:
    """The coordinate of each semiconjugacy class in its H1 ≅ Z.

    >>> d = HomotopyDescriptor.create([[1, 1], [0, 2]], [0, 1])
    >>> u1, D = GroupElement((1, 0)), GroupElement((0, 3))
    >>> homology_coefficients(Chain1(d.phi, [(1, u1, D)]), d)
    {GroupElement(exponents=(1, 3)): 1}
    """
    _check_reduced_rank(desc.phi)
    out = {}
    for rep, part in decompose_components(canonical, desc).items():
        total = sum(a * B.exponents[0] for a, B, D in part.terms)
        if total:
            out[rep] = total
    return out


def change_basis(ch: Chain1, P: IntMatrix) -> Chain1:
    """Transport ``ch`` along ``g ↦ P⁻¹ g``; the result is twisted by ``P⁻¹ φ P``.

    >>> phi = IntMatrix.from_rows([[2, -1], [1, 0]])
    >>> P = IntMatrix.from_rows([[1, 0], [1, 1]])
    >>> moved = change_basis(Chain1(phi, [(1, GroupElement((1, 1)), GroupElement((0, 1)))]), P)
    >>> moved.phi.to_rows(), [(a, B.exponents, D.exponents) for a, B, D in moved.terms]
    ([[1, -1], [0, 1]], [(1, (1, 0), (0, 1))])
    """
    inverse = integer_inverse(P)
    move = lambda g: GroupElement(inverse @ g.exponents)
    return Chain1(inverse @ ch.phi @ P,
                  tuple((a, move(B), move(D)) for a, B, D in ch.terms))
