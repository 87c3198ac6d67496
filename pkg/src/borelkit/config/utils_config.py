from dataclasses import fields
from enum import Enum, auto
from pathlib import Path


class DerivativeKind(Enum):
    """The three tree derivatives: leaf removal, finite-extension removal and antichain removal."""

    L = auto()
    I = auto()  # noqa: E741
    IIE = auto()


class LimitEnumeration(Enum):
    INTERLEAVED = auto()
    SWAPPED = auto()


class Suite(Enum):
    ORDINAL = auto()
    TREES = auto()
    CANONICAL_RANK = auto()
    DERIVE = auto()
    LEAF_SCHEME = auto()
    RT_ORACLE = auto()
    REGULAR = auto()
    REINDEX = auto()
    ANTITONE = auto()
    BROOM = auto()
    TILDE = auto()
    TOPOLOGY = auto()


class OutputFormat(Enum):
    JSON = auto()
    DOT = auto()


def serialize(data) -> dict:
    """Recursively serialize a nested dataclass to a dict - do some type conversions along the way"""
    if data is None:
        return None

    if not hasattr(data, "__dataclass_fields__"):
        return data

    result = {}
    for field in fields(data):
        value = getattr(data, field.name)
        if hasattr(value, "__dataclass_fields__"):
            result[field.name] = serialize(value)
        elif isinstance(value, Path):
            result[field.name] = str(value)
        elif isinstance(value, Enum):
            result[field.name] = value.name
        elif isinstance(value, (list, tuple)):
            result[field.name] = [serialize(v) for v in value]
        elif isinstance(value, dict) and not value:
            result[field.name] = None
        else:
            result[field.name] = value

    return result


def cast_str_to_derivative_kind(str_kind: str) -> DerivativeKind:
    if str_kind.upper() in DerivativeKind.__members__:
        return DerivativeKind[str_kind.upper()]
    else:
        raise ValueError(f"kind should be a string selected in ['l', 'i', 'iie'] and not {str_kind}")


def cast_str_to_suite(str_suite: str) -> Suite:
    name = str_suite.upper().replace("-", "_")
    if name in Suite.__members__:
        return Suite[name]
    else:
        choices = [s.name.lower().replace("_", "-") for s in Suite]
        raise ValueError(f"suite should be a string selected in {choices} and not {str_suite}")
