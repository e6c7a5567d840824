from hashlib import md5
from typing import Sequence

from pydantic import BaseModel

from src.errors import ParseError
from src.exactfield import Field
from src.utils.logger import setup_logger

logger = setup_logger(__name__)


def create_hash(string: str) -> str:
    """
    Create a short stable hash of the input string (cache keys, not security).

    Args:
        string: Input string to hash.
    """
    return md5(string.encode('utf-8')).hexdigest()


def fingerprint(model: BaseModel) -> str:
    """Hash of the canonical JSON form of a file model."""
    from app.serialization import dumps_canonical

    return create_hash(dumps_canonical(model))


def parse_scalars(field: Field, values: Sequence[str], where: str = "") -> list:
    """Parse scalar strings into payloads, naming the location on failure."""
    out = []
    for idx, text in enumerate(values):
        try:
            out.append(field.parse(text))
        except (ParseError, ValueError, ZeroDivisionError) as e:
            raise ParseError(f"bad scalar '{text}' at {where}[{idx}]: {e}") from e
    return out
