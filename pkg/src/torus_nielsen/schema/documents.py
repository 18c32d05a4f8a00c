"""
JSON documents read and written by the command line.

Input documents come with a :class:`GenericWrapper` that turns them into
domain objects; result documents have a schema only, and every result the
command line emits is checked against its schema.

    >>> doc = ProblemDocument.from_dict({"n": 1, "phi": [[1]], "c": [4]})
    >>> doc.value.c
    (4,)
    >>> ProblemDocument.from_dict({"n": 2, "phi": [[1, 0]], "c": [0, 0]})
    Traceback (most recent call last):
    ...
    torus_nielsen.errors.MalformedInput: "phi" violates constraint.
    >>> print(ChainDocument.from_dict(ChainSchema.example()).value)
    u1^-1⊗1 + u1^-1⊗u1^3
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple, Union

from torus_nielsen.apps import MONODROMY_CASES, T2BundleMapData
from torus_nielsen.descriptor import HomotopyDescriptor
from torus_nielsen.hochschild import Chain1, Chain2, GroupElement, RingElement
from torus_nielsen.intlin import IntMatrix
from torus_nielsen.nielsen import INFINITE, OneParamCase
from torus_nielsen.oracle import FixedSetMethod
from torus_nielsen.rules.predefined import Integer, NaturalNumber, OneOf
from torus_nielsen.schema import Schema, constraint
from torus_nielsen.schema.wrapper import GenericWrapper


def _phi_is_square(data) -> bool:
    n = data["n"]
    return len(data["phi"]) == n and all(len(row) == n for row in data["phi"])


def _optional_length(data, key) -> bool:
    return data.get(key) is None or len(data[key]) == data["n"]


def _rows(g: GroupElement) -> list:
    return list(g.exponents)


def fraction_text(x: Fraction) -> str:
    return str(Fraction(x))


# ═══════════════════════════ problem input ═══════════════════════════
@dataclass
class ProblemSchema(Schema):
    n: NaturalNumber
    phi: List[List[Integer]]
    c: List[Integer]

    __example_overrides__ = {"n": 2, "phi": [[1, 1], [0, 2]], "c": [0, 1]}

    @constraint("phi", "must be an n×n matrix")
    def _phi_square(data):
        return _phi_is_square(data)

    @constraint("c", "must have n entries")
    def _c_length(data):
        return len(data["c"]) == data["n"]


class ProblemDocument(GenericWrapper[HomotopyDescriptor]):
    Schema = ProblemSchema

    @staticmethod
    def _to_domain_impl(data: Dict[str, Any]) -> HomotopyDescriptor:
        return HomotopyDescriptor.create(data["phi"], data["c"])

    @staticmethod
    def _to_dict_impl(desc: HomotopyDescriptor) -> Dict[str, Any]:
        return {"n": desc.n, "phi": desc.phi.to_rows(), "c": list(desc.c)}


# ══════════════════════════════ chains ═══════════════════════════════
@dataclass
class TermSchema(Schema):
    coeff: Integer
    B: List[Integer]
    D: List[Integer]


@dataclass
class Term2Schema(Schema):
    coeff: Integer
    B: List[Integer]
    D: List[Integer]
    E: List[Integer]


@dataclass
class ChainSchema(Schema):
    """A 1-chain; ``c`` (default zero) only matters for class bookkeeping."""
    n: NaturalNumber
    phi: List[List[Integer]]
    terms: List[TermSchema]
    c: Optional[List[Integer]]

    __example_overrides__ = {"n": 1, "phi": [[1]], "c": [3],
                             "terms": [{"coeff": 1, "B": [-1], "D": [0]},
                                       {"coeff": 1, "B": [-1], "D": [3]}]}

    @constraint("phi", "must be an n×n matrix")
    def _phi_square(data):
        return _phi_is_square(data)

    @constraint("terms", "must use group elements with n exponents")
    def _terms_length(data):
        return all(len(t[k]) == data["n"] for t in data["terms"] for k in "BD")

    @constraint("c", "must have n entries")
    def _c_length(data):
        return _optional_length(data, "c")


@dataclass
class Chain2Schema(Schema):
    n: NaturalNumber
    phi: List[List[Integer]]
    terms: List[Term2Schema]

    __example_overrides__ = {"n": 1, "phi": [[1]],
                             "terms": [{"coeff": 1, "B": [0], "D": [0], "E": [2]}]}

    @constraint("phi", "must be an n×n matrix")
    def _phi_square(data):
        return _phi_is_square(data)

    @constraint("terms", "must use group elements with n exponents")
    def _terms_length(data):
        return all(len(t[k]) == data["n"] for t in data["terms"] for k in "BDE")


def class_vector(data: Dict[str, Any]) -> tuple:
    """The ``c`` of a chain or trace document, zero when absent."""
    return tuple(data.get("c") or (0,) * data["n"])


class ChainDocument(GenericWrapper[Chain1]):
    Schema = ChainSchema

    @staticmethod
    def _to_domain_impl(data: Dict[str, Any]) -> Chain1:
        return Chain1(IntMatrix.from_rows(data["phi"]),
                      [(t["coeff"], GroupElement(t["B"]), GroupElement(t["D"]))
                       for t in data["terms"]])

    @staticmethod
    def _to_dict_impl(ch: Chain1) -> Dict[str, Any]:
        return {"n": ch.n, "phi": ch.phi.to_rows(),
                "terms": [{"coeff": a, "B": _rows(B), "D": _rows(D)}
                          for a, B, D in ch.terms]}


class Chain2Document(GenericWrapper[Chain2]):
    Schema = Chain2Schema

    @staticmethod
    def _to_domain_impl(data: Dict[str, Any]) -> Chain2:
        return Chain2(IntMatrix.from_rows(data["phi"]),
                      [(t["coeff"], GroupElement(t["B"]), GroupElement(t["D"]),
                        GroupElement(t["E"])) for t in data["terms"]])

    @staticmethod
    def _to_dict_impl(ch: Chain2) -> Dict[str, Any]:
        return {"n": ch.n, "phi": ch.phi.to_rows(),
                "terms": [{"coeff": a, "B": _rows(B), "D": _rows(D), "E": _rows(E)}
                          for a, B, D, E in ch.terms]}


# ═════════════════════════ ring elements ═════════════════════════════
@dataclass
class RingTermSchema(Schema):
    coeff: Integer
    g: List[Integer]


@dataclass
class RingSchema(Schema):
    n: NaturalNumber
    terms: List[RingTermSchema]

    __example_overrides__ = {"n": 1, "terms": [{"coeff": 1, "g": [2]}, {"coeff": -1, "g": [0]}]}

    @constraint("terms", "must use group elements with n exponents")
    def _terms_length(data):
        return all(len(t["g"]) == data["n"] for t in data["terms"])


def _ring_from(entries: list) -> RingElement:
    return RingElement(tuple((t["coeff"], GroupElement(t["g"])) for t in entries))


def _ring_to(r: RingElement) -> list:
    return [{"coeff": a, "g": _rows(g)} for a, g in r.terms]


class RingDocument(GenericWrapper[Tuple[int, RingElement]]):
    Schema = RingSchema

    @staticmethod
    def _to_domain_impl(data: Dict[str, Any]) -> Tuple[int, RingElement]:
        return data["n"], _ring_from(data["terms"])

    @staticmethod
    def _to_dict_impl(obj: Tuple[int, RingElement]) -> Dict[str, Any]:
        n, r = obj
        return {"n": n, "terms": _ring_to(r)}


# ═════════════════════════════ traces ════════════════════════════════
RingMatrix = List[List[List[RingTermSchema]]]


@dataclass
class TraceSchema(Schema):
    """``sign · trace(P ⊗ Q)`` with group-ring matrices ``P`` (r×s) and ``Q`` (s×r)."""
    n: NaturalNumber
    phi: List[List[Integer]]
    P: RingMatrix
    Q: RingMatrix
    c: Optional[List[Integer]]
    sign: Optional[OneOf[1, -1]]

    __example_overrides__ = {
        "n": 1, "phi": [[1]], "c": [2], "sign": 1,
        "P": [[[{"coeff": 1, "g": [-1]}, {"coeff": -1, "g": [0]}]]],
        "Q": [[[{"coeff": 1, "g": [0]}, {"coeff": 1, "g": [-1]}]]],
    }

    @constraint("phi", "must be an n×n matrix")
    def _phi_square(data):
        return _phi_is_square(data)

    @constraint("c", "must have n entries")
    def _c_length(data):
        return _optional_length(data, "c")

    @constraint("Q", "must be s×r when P is r×s")
    def _shapes(data):
        P, Q = data["P"], data["Q"]
        r = len(P)
        s = len(P[0]) if P else len(Q)
        return (all(len(row) == s for row in P) and len(Q) == s
                and all(len(row) == r for row in Q))

    @constraint("P", "entries must use group elements with n exponents")
    def _entries_length(data):
        return all(len(t["g"]) == data["n"]
                   for m in (data["P"], data["Q"]) for row in m
                   for entry in row for t in entry)


@dataclass(frozen=True)
class TraceProblem:
    desc: HomotopyDescriptor
    P: tuple
    Q: tuple
    sign: int = 1


class TraceDocument(GenericWrapper[TraceProblem]):
    Schema = TraceSchema

    @staticmethod
    def _to_domain_impl(data: Dict[str, Any]) -> TraceProblem:
        ring_matrix = lambda m: tuple(tuple(_ring_from(e) for e in row) for row in m)
        desc = HomotopyDescriptor.create(data["phi"], class_vector(data))
        return TraceProblem(desc, ring_matrix(data["P"]), ring_matrix(data["Q"]),
                            data.get("sign") or 1)

    @staticmethod
    def _to_dict_impl(t: TraceProblem) -> Dict[str, Any]:
        ring_matrix = lambda m: [[_ring_to(e) for e in row] for row in m]
        return {"n": t.desc.n, "phi": t.desc.phi.to_rows(),
                "P": ring_matrix(t.P), "Q": ring_matrix(t.Q),
                "c": list(t.desc.c), "sign": t.sign}


# ═════════════════════════════ bundles ═══════════════════════════════
@dataclass
class BundleT2Schema(Schema):
    b12: Integer
    b22: Integer
    c1: Integer
    c2: Integer
    case: Optional[OneOf[MONODROMY_CASES]]


class BundleT2Document(GenericWrapper[T2BundleMapData]):
    Schema = BundleT2Schema

    @staticmethod
    def _to_domain_impl(data: Dict[str, Any]) -> T2BundleMapData:
        return T2BundleMapData(data["b12"], data["b22"], data["c1"], data["c2"],
                               data.get("case"))

    @staticmethod
    def _to_dict_impl(d: T2BundleMapData) -> Dict[str, Any]:
        out = {"b12": d.b12, "b22": d.b22, "c1": d.c1, "c2": d.c2}
        if d.case is not None:
            out["case"] = d.case
        return out


@dataclass
class BundleS1Schema(Schema):
    k: Integer


class BundleS1Document(GenericWrapper[int]):
    Schema = BundleS1Schema

    @staticmethod
    def _to_domain_impl(data: Dict[str, Any]) -> int:
        return data["k"]

    @staticmethod
    def _to_dict_impl(k: int) -> Dict[str, Any]:
        return {"k": k}


# ══════════════════════════ result documents ═════════════════════════
@dataclass
class ClassicResult(Schema):
    classical_nielsen: int


@dataclass
class OneParamResultSchema(Schema):
    N: int
    case: OneOf[tuple(c.value for c in OneParamCase)]
    alpha: Optional[List[int]]
    sign_ambiguous: Optional[bool]


@dataclass
class LefschetzResult(Schema):
    N: int
    alpha: Optional[List[int]]
    sign_ambiguous: bool


@dataclass
class SemiconjResult(Schema):
    invariant_factors: List[int]
    free_rank: int
    order: Union[int, OneOf[INFINITE]]
    representatives: Union[List[List[int]], OneOf[INFINITE]]


@dataclass
class SemicentralizerResult(Schema):
    basis: List[List[int]]


@dataclass
class JezierskiResult(Schema):
    D: int


@dataclass
class ComponentSchema(Schema):
    representative: List[int]
    coefficient: int


@dataclass
class ReduceResult(Schema):
    canonical: ChainSchema
    certificate: Chain2Schema
    components: List[ComponentSchema]
    N: int


@dataclass
class TraceResult(Schema):
    chain: ChainSchema
    N: Optional[int]
    lefschetz: Optional[List[int]]
    reason: Optional[str]


@dataclass
class SampleSchema(Schema):
    """A point ``(x, t)`` with coordinates written as exact fractions."""
    x: List[str]
    t: str


@dataclass
class OracleResult(Schema):
    components: int
    method: OneOf[tuple(m.value for m in FixedSetMethod)]
    samples: Optional[List[SampleSchema]]


@dataclass
class BundleResult(Schema):
    N: int
    case: Optional[OneOf[MONODROMY_CASES]]


@dataclass
class ErrorBody(Schema):
    type: str
    message: str
    expected: str


@dataclass
class ErrorResult(Schema):
    error: ErrorBody
