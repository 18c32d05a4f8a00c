from abc import ABC, abstractmethod
from typing import Generic, TypeVar, Dict, Any

from torus_nielsen.schema import Schema

T = TypeVar("T")


class GenericWrapper(Generic[T], ABC):
    """JSON ⇆ domain round trips: validate against ``Schema``, then convert."""
    Schema: type  # subclasses set this to a Schema subclass

    def __init__(self, inner: T):
        self._inner = inner

    @property
    def value(self) -> T:
        return self._inner

    # ---------- factory ----------
    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "GenericWrapper[T]":
        cls.Schema.validate_or_raise(data)
        return cls(cls._to_domain_impl(data))

    # ---------- serialise ----------
    def json(self) -> Dict[str, Any]:
        return self._to_dict_impl(self._inner)

    # ---------- hooks ----------
    @staticmethod
    @abstractmethod
    def _to_domain_impl(data: Dict[str, Any]) -> T: ...

    @staticmethod
    @abstractmethod
    def _to_dict_impl(obj: T) -> Dict[str, Any]: ...
