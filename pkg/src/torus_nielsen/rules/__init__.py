class RuleMeta(type):
    """
    Factory:  MyRule[params]  ➜  a *concrete* subclass that carries the params.
    A concrete rule exposes describe() -> str, example() and validate(v) -> bool.

    >>> from torus_nielsen.rules.predefined import OneOf
    >>> Sign = OneOf[1, -1]
    >>> Sign.__name__, Sign.validate(-1), Sign.validate(0)
    ('OneOf_1_-1', True, False)
    """

    def __getitem__(cls, params):
        if not isinstance(params, tuple):
            params = (params,)
        attrs = {"__rule_params__": params}
        name = f"{cls.__name__}_" + "_".join(map(str, params))
        return RuleMeta(name, (cls,), attrs)

    def __call__(cls, *args, **kwargs):
        if cls is Rule:
            raise TypeError("Cannot instantiate Rule directly")
        return super().__call__(*args, **kwargs)


class Rule(metaclass=RuleMeta):
    """Abstract scalar rule; annotate fields with its subclasses only."""

    @classmethod
    def describe(cls) -> str: ...

    @classmethod
    def example(cls): ...

    @classmethod
    def validate(cls, v) -> bool: ...
