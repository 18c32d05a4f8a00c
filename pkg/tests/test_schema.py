import pytest

from torus_nielsen.errors import MalformedInput
from torus_nielsen.hochschild import GroupElement, boundary_d1
from torus_nielsen.rules.predefined import Integer, NaturalNumber, OneOf
from torus_nielsen.schema import documents as docs


def test_rules():
    assert Integer.validate(-3) and not Integer.validate(True) and not Integer.validate(1.5)
    assert NaturalNumber.validate(1) and not NaturalNumber.validate(0)
    Sign = OneOf[1, -1]
    assert Sign.validate(-1) and not Sign.validate(0) and not Sign.validate(True)
    assert Sign.describe() == "one of 1, -1" and Sign.example() == 1


@pytest.mark.parametrize("doc, error, expected", [
    ({"n": 0, "phi": [], "c": []}, '"n" is invalid.', '"n" must be integer (>= 1)'),
    ({"n": 1, "phi": [[1]]}, '"c" is missing.', '"c" must be present.'),
    ({"n": 1, "phi": [[1]], "c": [1], "x": 0}, '"x" is not a valid field.', '"x" is not expected here.'),
    ({"n": 1, "phi": [[True]], "c": [1]}, '"phi[0][0]" is invalid.', '"phi[0][0]" must be integer'),
    ({"n": 1, "phi": [[1]], "c": [1, 2]}, '"c" violates constraint.', '"c" must have n entries'),
    ({"n": 1, "phi": 7, "c": [1]}, '"phi" must be a list, got int', '"phi" must be list'),
])
def test_problem_validation_errors(doc, error, expected):
    assert docs.ProblemSchema.validate_with_error(doc) == (False, error, expected)


def test_nested_errors_name_the_field():
    doc = {"n": 1, "phi": [[1]], "terms": [{"coeff": 1, "B": [0], "D": "x"}]}
    ok, error, expected = docs.ChainSchema.validate_with_error(doc)
    assert not ok and error.startswith('"terms[0].D"')


def test_wrappers_raise_malformed_input():
    with pytest.raises(MalformedInput) as info:
        docs.ProblemDocument.from_dict({"n": 2, "phi": [[1, 0], [0]], "c": [0, 0]})
    assert info.value.expected == '"phi" must be an n×n matrix'
    with pytest.raises(MalformedInput):
        docs.ProblemDocument.from_dict([1, 2])


def test_examples_validate():
    for schema in (docs.ProblemSchema, docs.ChainSchema, docs.Chain2Schema, docs.TraceSchema,
                   docs.BundleT2Schema, docs.BundleS1Schema, docs.RingSchema):
        assert schema.validate_with_error(schema.example()) == (True,), schema.__name__


def test_describe_lists_fields_and_constraints():
    text = docs.ProblemSchema.describe()
    assert "- phi\n  • list of list of integers" in text
    assert "phi must be an n×n matrix" in text
    assert text.endswith('{"n": 2, "phi": [[1, 1], [0, 2]], "c": [0, 1]}')


def test_chain_documents_round_trip():
    data = {"n": 2, "phi": [[1, 1], [0, 2]],
            "terms": [{"coeff": 2, "B": [1, 0], "D": [0, 3]}, {"coeff": -1, "B": [1, 1], "D": [0, 0]}]}
    ch = docs.ChainDocument.from_dict(data).value
    assert docs.ChainDocument(ch).json() == data
    assert docs.class_vector(data) == (0, 0)
    assert docs.class_vector({**data, "c": [1, 2]}) == (1, 2)
    ring = docs.RingDocument((2, boundary_d1(ch))).json()
    assert docs.RingSchema.validate_with_error(ring) == (True,)
    assert ring["terms"] == [{"coeff": 1, "g": [1, 1]}, {"coeff": -1, "g": [2, 2]}]


def test_trace_document():
    problem = docs.TraceDocument.from_dict(docs.TraceSchema.example()).value
    assert problem.desc.c == (2,) and problem.sign == 1
    assert problem.P[0][0].terms == ((1, GroupElement((-1,))), (-1, GroupElement((0,))))
    bad = {**docs.TraceSchema.example(), "Q": [[[]], [[]]]}
    assert docs.TraceSchema.validate_with_error(bad)[1] == '"Q" violates constraint.'
    with pytest.raises(MalformedInput):
        docs.TraceDocument.from_dict({**docs.TraceSchema.example(), "sign": 2})


def test_bundle_documents():
    d = docs.BundleT2Document.from_dict({"b12": 0, "b22": -1, "c1": 2, "c2": 1, "case": "IV"}).value
    assert (d.b12, d.case) == (0, "IV")
    with pytest.raises(MalformedInput):
        docs.BundleT2Document.from_dict({"b12": 0, "b22": -1, "c1": 2, "c2": 1, "case": "I"})
    assert docs.BundleS1Document.from_dict({"k": -3}).value == -3


def test_result_schemas():
    assert docs.SemiconjResult.validate_with_error(
        {"invariant_factors": [], "free_rank": 2, "order": "INFINITE",
         "representatives": "INFINITE"}) == (True,)
    assert docs.SemiconjResult.validate_with_error(
        {"invariant_factors": [3], "free_rank": 0, "order": 3,
         "representatives": [[0], [1], [2]]}) == (True,)
    assert not docs.SemiconjResult.validate_with_error(
        {"invariant_factors": [], "free_rank": 0, "order": "many", "representatives": []})[0]
    assert docs.OneParamResultSchema.validate_with_error({"N": 0, "case": "RANK_DEFICIENT"}) == (True,)
    assert not docs.OneParamResultSchema.validate_with_error({"N": 0, "case": "OTHER"})[0]
