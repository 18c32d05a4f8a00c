"""
Reading and writing JSON documents.

Input must be strict JSON; anything ``json.loads`` rejects is a
:class:`MalformedInput`.

    >>> load_document('{"k": 3}')
    {'k': 3}
    >>> load_document('{"k": 3,}')  # doctest: +ELLIPSIS
    Traceback (most recent call last):
    ...
    torus_nielsen.errors.MalformedInput: bad JSON: ...
"""
import json
import logging
from pathlib import Path
from typing import Any

from torus_nielsen.errors import MalformedInput

logger = logging.getLogger(__name__)


def load_document(source: str) -> dict:
    """Parse ``source``: inline JSON when it starts with ``{``, else a file path."""
    if source.lstrip().startswith("{"):
        text = source
    else:
        path = Path(source)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise MalformedInput(f"cannot read {source!r}: {exc.strerror}",
                                 "a JSON document or the path of one") from None
        logger.debug("read %d bytes from %s", len(text), path)
    if not text.strip():
        raise MalformedInput("empty document", "a JSON object")
    try:
        data = json.loads(text)
    except json.decoder.JSONDecodeError as exc:
        raise MalformedInput(f"bad JSON: {exc}", "a JSON object") from None
    if not isinstance(data, dict):
        raise MalformedInput(f"document is a {type(data).__name__}", "a JSON object")
    return data


def dump_document(data: Any) -> str:
    """
    >>> dump_document({"N": 4, "alpha": [1, 0]})
    '{"N":4,"alpha":[1,0]}'
    """
    return json.dumps(data, separators=(",", ":"), ensure_ascii=False)
