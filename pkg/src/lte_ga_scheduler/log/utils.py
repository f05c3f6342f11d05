"""Logging utilities.

`msgspec_json_renderer()`     A JSON Renderer for structlog using
msgspec.

Msgspec doesn't have an API consistent with the stdlib's `json` module,
which is required for structlog's `JSONRenderer`.
"""

from __future__ import annotations

from pathlib import PurePath
from typing import TYPE_CHECKING, Any

import msgspec
import numpy as np

if TYPE_CHECKING:
    from structlog.typing import EventDict, WrappedLogger


def enc_hook(obj: Any) -> Any:
    """Encode the numpy values and paths that end up in log events and summaries.

    Args:
        obj: Object msgspec doesn't natively support.

    Returns:
        A natively supported equivalent.

    Raises:
        NotImplementedError: For any other type.
    """
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, PurePath):
        return str(obj)
    raise NotImplementedError(f"Objects of type {type(obj)!r} are not supported")


_encoder = msgspec.json.Encoder(enc_hook=enc_hook)


def msgspec_json_renderer(_: WrappedLogger, __: str, event_dict: EventDict) -> bytes:
    """Structlog processor that uses `msgspec` for JSON encoding.

    Args:
        _ ():
        __ ():
        event_dict (): The data to be logged.

    Returns:
        The log event encoded to JSON by msgspec.
    """
    return _encoder.encode(event_dict)
