from dataclasses import dataclass, fields
from typing import get_type_hints, get_origin, get_args, Any, Union
import json

from torus_nielsen.errors import MalformedInput
from torus_nielsen.rules import Rule

NoneType = type(None)


def constraint(path: str, desc: str):
    """Declare a cross-field check; ``fn(data)`` returns truthy when satisfied."""
    def wrap(fn):
        fn.__constraint_info__ = (path, desc)
        return fn

    return wrap


class Schema:
    """
    A dataclass description of a JSON document that can validate it and
    describe what it expects.

    Examples:
        We create a schema by subclassing :class:`Schema` ...
        >>> from typing import List
        >>> @dataclass
        ... class Point(Schema):
        ...     n: int
        ...     x: List[int]
        ...
        ...     @constraint("x", "must have n entries")
        ...     def _(data):
        ...         return len(data["x"]) == data["n"]

        ... validation is *lazy* and stops at the first error
        >>> Point.validate_with_error({"n": 2, "x": [1, 2]})
        (True,)
        >>> Point.validate_with_error({"n": True, "x": [1, 2]})
        (False, '"n" must be integer', '"n" must be integer')
        >>> Point.validate_with_error({"n": 2, "x": [1, "a"]})
        (False, '"x[1]" must be integer', '"x[1]" must be integer')
        >>> Point.validate_with_error({"n": 3, "x": [1, 2]})
        (False, '"x" violates constraint.', '"x" must have n entries')
        >>> Point.validate_with_error({"n": 2, "x": [1, 2], "y": 0})
        (False, '"y" is not a valid field.', '"y" is not expected here.')

        ... and it can describe itself
        >>> print("\\n".join(Point.rules()))
        - n
          • integer
        - x
          • list of integers
          - x must have n entries
        >>> Point.example()
        {'n': 42, 'x': [42]}
    """
    _declared_constraints: list = []

    def __init_subclass__(cls):
        super().__init_subclass__()
        cls._declared_constraints = []
        for v in cls.__dict__.values():
            if hasattr(v, "__constraint_info__"):
                path, desc = v.__constraint_info__
                cls._declared_constraints.append((path, desc, staticmethod(v)))

    # ──────────────────────── type introspection ────────────────────────
    @staticmethod
    def _origin(t):
        return get_origin(t) or t

    @staticmethod
    def _is_rule(t):
        try:
            return issubclass(t, Rule)
        except TypeError:
            return False

    @staticmethod
    def _is_schema(t):
        try:
            return issubclass(t, Schema)
        except TypeError:
            return False

    @staticmethod
    def _is_list(t):
        return Schema._origin(t) is list

    @staticmethod
    def _is_union(t):
        return get_origin(t) is Union

    @staticmethod
    def _is_optional(t):
        return Schema._is_union(t) and NoneType in get_args(t) and len(get_args(t)) == 2

    @classmethod
    def _field_types(cls) -> dict:
        hints = get_type_hints(cls)
        return {f.name: hints[f.name] for f in fields(cls)}

    # ─────────────────────────── description ────────────────────────────
    @classmethod
    def _describe_type(cls, typ: Any) -> str:
        if cls._is_rule(typ):
            return typ.describe()
        if typ in (str, int, bool):
            return {str: "string", int: "integer", bool: "boolean"}[typ]
        if cls._is_list(typ):
            elem = get_args(typ)[0]
            inner = cls._describe_type(elem)
            if cls._is_list(elem) or cls._is_schema(elem):
                return f"list of {inner}"
            return f"list of {inner}s"
        if cls._is_optional(typ):
            inner = next(t for t in get_args(typ) if t is not NoneType)
            return f"(optional) {cls._describe_type(inner)}"
        if cls._is_union(typ):
            return " or ".join(cls._describe_type(t) for t in get_args(typ))
        if cls._is_schema(typ):
            return typ.__name__
        return str(typ)

    @classmethod
    def _example_for_type(cls, typ: Any):
        if cls._is_rule(typ):
            return typ.example()
        if cls._is_list(typ):
            return [cls._example_for_type(get_args(typ)[0])]
        if cls._is_union(typ):
            first = next(t for t in get_args(typ) if t is not NoneType)
            return cls._example_for_type(first)
        if cls._is_schema(typ):
            return typ.example()
        return {str: "example", int: 42, bool: True}.get(typ, f"<{typ}>")

    @classmethod
    def example(cls) -> dict:
        ex = {n: cls._example_for_type(t) for n, t in cls._field_types().items()}
        ex.update(getattr(cls, "__example_overrides__", {}))
        return ex

    @classmethod
    def rules(cls, prefix: str = "", _lvl: int = 0) -> list:
        """A nested bullet list of the fields and their constraints."""
        IND = "  " * _lvl
        lines = []
        grouped: dict = {}
        for path, desc, _ in cls._declared_constraints:
            head, *rest = path.split(".", 1)
            grouped.setdefault(head, []).append((".".join(rest), desc))

        for name, typ in cls._field_types().items():
            full = f"{prefix}{name}"
            lines.append(f"{IND}- {full}")
            lines.append(f"{IND}  • {cls._describe_type(typ)}")

            inner = typ
            if cls._is_optional(typ):
                inner = next(t for t in get_args(typ) if t is not NoneType)
            if cls._is_schema(inner):
                lines.extend(inner.rules(full + ".", _lvl + 1))
            elif cls._is_list(inner) and cls._is_schema(get_args(inner)[0]):
                lines.extend(get_args(inner)[0].rules(full + "[].", _lvl + 1))

            for tail, desc in grouped.get(name, []):
                p = f"{full}.{tail}" if tail else full
                lines.append(f"{IND}  - {p} {desc}")

        for tail, desc in grouped.get("", []):
            lines.append(f"{IND}- {desc}")
        return lines

    # ─────────────────────────── validation ─────────────────────────────
    @classmethod
    def _validate_value(cls, key: str, val, typ: Any, prefix: str = ""):
        """None if ``val`` is valid, else ``(error, expected)``."""
        full = f"{prefix}{key}"

        if cls._is_rule(typ):
            if not typ.validate(val):
                return (f'"{full}" is invalid.', f'"{full}" must be {typ.describe()}')
            return None

        if cls._is_list(typ):
            if not isinstance(val, list):
                return (f'"{full}" must be a list, got {type(val).__name__}',
                        f'"{full}" must be list')
            elem_typ = get_args(typ)[0]
            for i, v in enumerate(val):
                err = cls._validate_value(f"{key}[{i}]", v, elem_typ, prefix)
                if err:
                    return err
            return None

        if cls._is_optional(typ):
            if val is None:
                return None
            inner = next(t for t in get_args(typ) if t is not NoneType)
            return cls._validate_value(key, val, inner, prefix)

        if cls._is_union(typ):
            expected = []
            for alt in get_args(typ):
                err = cls._validate_value(key, val, alt, prefix)
                if err is None:
                    return None
                expected.append(err[1])
            return (f'"{full}" matches none of the allowed alternatives.',
                    " or ".join(expected))

        if cls._is_schema(typ):
            if not isinstance(val, dict):
                return (f'"{full}" must be an object', f'"{full}" must be an object')
            ok, *reason = typ.validate_with_error(val)
            if ok:
                return None
            err, exp = reason
            # re-anchor the nested message at this field
            if err.startswith('"'):
                err = f'"{full}.{err[1:]}'
            if exp.startswith('"'):
                exp = f'"{full}.{exp[1:]}'
            return err, exp

        # bool is an int subclass; JSON true/false are never integers here
        if typ is int and (not isinstance(val, int) or isinstance(val, bool)):
            return (f'"{full}" must be integer', f'"{full}" must be integer')
        if typ is str and not isinstance(val, str):
            return (f'"{full}" must be string', f'"{full}" must be string')
        if typ is bool and not isinstance(val, bool):
            return (f'"{full}" must be boolean', f'"{full}" must be boolean')
        return None

    @classmethod
    def validate_with_error(cls, data: dict):
        """Return ``(True,)`` if OK, else ``(False, error, expected)``."""
        if not isinstance(data, dict):
            return False, "document must be a JSON object", "a JSON object"
        types = cls._field_types()
        for k in data:
            if k not in types:
                return False, f'"{k}" is not a valid field.', f'"{k}" is not expected here.'

        for name, typ in types.items():
            if name not in data:
                if cls._is_optional(typ):
                    continue
                return False, f'"{name}" is missing.', f'"{name}" must be present.'
            err = cls._validate_value(name, data[name], typ)
            if err:
                return False, err[0], err[1]

        ok, *reason = cls.validate_cross(data)
        if not ok:
            return False, *reason
        return True,

    @classmethod
    def validate_cross(cls, data: dict):
        for path, desc, fn in cls._declared_constraints:
            if not fn(data):
                return False, f'"{path}" violates constraint.', f'"{path}" {desc}'
        return True,

    @classmethod
    def validate_or_raise(cls, data: dict) -> None:
        """
        >>> @dataclass
        ... class K(Schema):
        ...     k: int
        >>> K.validate_or_raise({"k": "7"})
        Traceback (most recent call last):
        ...
        torus_nielsen.errors.MalformedInput: "k" must be integer
        """
        ok, *detail = cls.validate_with_error(data)
        if ok:
            return
        err, exp = (detail + ["<no details>"])[:2]
        raise MalformedInput(err, exp)

    @classmethod
    def describe(cls) -> str:
        """Rules and an example document, for help texts."""
        return "\n".join(cls.rules()) + "\n\nExample:\n" + json.dumps(cls.example())
