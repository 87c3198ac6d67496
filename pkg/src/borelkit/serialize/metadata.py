import dataclasses
import json
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple, Type, Union

import dacite
from packaging.version import InvalidVersion, Version

from borelkit.constants import DOCUMENT_VERSION
from borelkit.exceptions import ParseError
from borelkit.ordinal import Ordinal, format_ordinal
from borelkit.serialize.codec import decode, encode


@dataclasses.dataclass
class Document:
    """
    version: version of the document layout, bumped on breaking changes only.
    payload: a tagged object (see ``borelkit.serialize.codec``).
    """

    version: Version
    payload: Dict[str, Any]


@dataclasses.dataclass
class CounterexampleDocument:
    """A failing case of a verify suite; ``inputs`` are tagged objects and can be fed back to the CLI."""

    version: Version
    suite: str
    seed: int
    case: int
    message: str
    inputs: Dict[str, Any]


def process_type(elt: Any, type_hooks: Dict[Type, Callable[[Any], Any]]):
    if isinstance(elt, dict):
        return to_dict(elt, type_hooks=type_hooks)
    elif elt.__class__ in type_hooks:
        return type_hooks[elt.__class__](elt)
    elif isinstance(elt, (frozenset, set)):
        return [process_type(e, type_hooks=type_hooks) for e in sorted(elt, key=repr)]
    elif isinstance(elt, (list, tuple)):
        return to_list(elt, type_hooks=type_hooks)
    else:
        return elt


def to_dict(dict_: Dict, type_hooks: Dict[Type, Callable[[Any], Any]]):
    result = {}
    for key, value in dict_.items():
        result[str(key)] = process_type(value, type_hooks=type_hooks)
    return result


def to_list(list_: Union[List, Tuple], type_hooks: Dict[Type, Callable[[Any], Any]]):
    return [process_type(elt, type_hooks=type_hooks) for elt in list_]


JSON_HOOKS: Dict[Type, Callable[[Any], Any]] = {Version: str, Ordinal: format_ordinal}


def dumps(data: Any) -> str:
    """Deterministic JSON text: identical inputs always give byte-identical output."""
    return json.dumps(process_type(data, type_hooks=JSON_HOOKS), indent=2, sort_keys=True, ensure_ascii=False)


def _check_version(version: Version):
    # Assume that we're always backward compatible, we only increment DOCUMENT_VERSION when there's a breaking change.
    if version > DOCUMENT_VERSION:
        raise ParseError(
            f"document is of version {version}, current `borelkit` document version is {DOCUMENT_VERSION}"
        )


def _from_dict(data_class, data: Dict[str, Any]):
    try:
        return dacite.from_dict(data_class=data_class, data=data, config=dacite.Config(cast=[Version], strict=True))
    except (dacite.DaciteError, InvalidVersion) as e:
        raise ParseError(f"malformed {data_class.__name__}: {e}") from e


def to_document(obj) -> Dict[str, Any]:
    return {"version": str(DOCUMENT_VERSION), **encode(obj)}


def from_document(data: Any) -> Any:
    """Decode a tagged object; the ``version`` field is optional and checked when present."""
    if not isinstance(data, dict):
        raise ParseError(f"a document should be a JSON object and not {type(data).__name__}")
    data = dict(data)
    if "version" in data:
        document = _from_dict(Document, {"version": data.pop("version"), "payload": data})
        _check_version(document.version)
    return decode(data)


def dumps_object(obj) -> str:
    return dumps(to_document(obj))


def loads_object(text: str) -> Any:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e}") from e
    return from_document(data)


def save_object(obj, path: Path):
    path = Path(path)
    path.parent.mkdir(exist_ok=True, parents=True)
    with open(path, mode="w") as fo:
        fo.write(dumps_object(obj))


def load_object(path: Path) -> Any:
    try:
        with open(Path(path), mode="r") as fi:
            text = fi.read()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e}") from e
    return loads_object(text)


def save_counterexample(
    root_folder: Path, file_name: str, suite: str, seed: int, case: int, message: str, inputs: Dict[str, Any]
) -> Path:
    root_folder = Path(root_folder)
    root_folder.mkdir(exist_ok=True, parents=True)
    document = CounterexampleDocument(
        version=DOCUMENT_VERSION,
        suite=suite,
        seed=seed,
        case=case,
        message=message,
        inputs={name: _encode_input(value) for name, value in inputs.items()},
    )
    path = root_folder / file_name
    with open(path, mode="w") as fo:
        fo.write(dumps(dataclasses.asdict(document)))
    return path


def _encode_input(value):
    if isinstance(value, (list, tuple)):
        return [_encode_input(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _encode_input(v) for k, v in value.items()}
    try:
        return encode(value)
    except ParseError:
        return process_type(value, type_hooks=JSON_HOOKS)


def _decode_input(value):
    if isinstance(value, dict) and "type" in value:
        return decode(value)
    if isinstance(value, dict):
        return {k: _decode_input(v) for k, v in value.items()}
    if isinstance(value, list):
        return [_decode_input(v) for v in value]
    return value


def load_counterexample(path: Path) -> Tuple[CounterexampleDocument, Dict[str, Optional[Any]]]:
    """The document and its inputs, decoded back to objects where they are tagged."""
    with open(Path(path), mode="r") as fi:
        data = json.load(fi)
    document = _from_dict(CounterexampleDocument, data)
    _check_version(document.version)
    inputs = {name: _decode_input(value) for name, value in document.inputs.items()}
    return document, inputs
