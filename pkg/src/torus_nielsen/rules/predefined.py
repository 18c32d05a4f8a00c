from torus_nielsen.rules import Rule


def _is_integer(v) -> bool:
    return isinstance(v, int) and not isinstance(v, bool)


class Integer(Rule):
    """Any JSON integer; ``true``/``false`` are rejected."""

    @classmethod
    def describe(cls):
        return "integer"

    @classmethod
    def example(cls):
        return 1

    @classmethod
    def validate(cls, v):
        return _is_integer(v)


class NaturalNumber(Rule):
    @classmethod
    def describe(cls):
        return "integer (>= 1)"

    @classmethod
    def example(cls):
        return 2

    @classmethod
    def validate(cls, v):
        return _is_integer(v) and v >= 1


class OneOf(Rule):
    @classmethod
    def describe(cls):
        return "one of " + ", ".join(map(repr, cls.__rule_params__))

    @classmethod
    def example(cls):
        return cls.__rule_params__[0]

    @classmethod
    def validate(cls, v):
        return not isinstance(v, bool) and v in cls.__rule_params__
