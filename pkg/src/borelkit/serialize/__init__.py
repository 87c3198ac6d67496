# flake8: noqa
from borelkit.serialize.codec import decode, decode_as, decode_ordinal, encode, encode_ordinal
from borelkit.serialize.metadata import (
    CounterexampleDocument,
    Document,
    dumps,
    dumps_object,
    from_document,
    load_counterexample,
    load_object,
    loads_object,
    save_counterexample,
    save_object,
    to_document,
)
