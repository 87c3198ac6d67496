"""JSON encodings of the domain objects as tagged unions: every object is a dict with a ``"type"`` field."""
from typing import Any, Callable, Dict, Type

from borelkit.broom.expr import (
    BroomExpr,
    FiniteList,
    Fork,
    Handle,
    LadderClosure,
    PatchedBranches,
    RankLadder,
    Trivial,
    UniformTail,
)
from borelkit.broom.extension import ConeStrategy, InfBroomExpr, ListedStrategy
from borelkit.config.utils_config import DerivativeKind, LimitEnumeration
from borelkit.exceptions import BorelkitError, ParseError
from borelkit.fintop.space import FinSpace, from_preorder, sorted_points
from borelkit.ordinal import Ordinal, format_ordinal, parse_ordinal
from borelkit.schemes.leaf import LeafScheme
from borelkit.schemes.setexpr import Base, Inter, Union, Universe
from borelkit.suslin.scheme import SuslinScheme
from borelkit.trees.expr import (
    CanonicalSeq,
    Constant,
    Empty,
    Explicit,
    Full,
    Graft,
    JoinFinite,
    JoinOmega,
    PatchedMembers,
    Periodic,
    Point,
    PrefixThenConstant,
    Ray,
)
from borelkit.trees.finite import FiniteTree

Encoder = Callable[[Any], Dict[str, Any]]
Decoder = Callable[[Dict[str, Any]], Any]

_ENCODERS: Dict[Type, Encoder] = {}
_DECODERS: Dict[str, Decoder] = {}


def register(cls: Type, tag: str, encoder: Encoder, decoder: Decoder):
    _ENCODERS[cls] = lambda obj: {"type": tag, **encoder(obj)}
    _DECODERS[tag] = decoder


# Atoms


def encode_atom(x):
    if isinstance(x, tuple):
        return [encode_atom(e) for e in x]
    return x


def decode_atom(x):
    if isinstance(x, list):
        return tuple(decode_atom(e) for e in x)
    if isinstance(x, dict):
        raise ParseError("points and atoms should be numbers, strings or lists")
    return x


def encode_subset(s) -> list:
    return [encode_atom(x) for x in sorted_points(s)]


def decode_subset(data) -> frozenset:
    if not isinstance(data, list):
        raise ParseError(f"a set should be a list and not {type(data).__name__}")
    return frozenset(decode_atom(x) for x in data)


def encode_seq(s) -> list:
    return list(s)


def decode_seq(data) -> tuple:
    if not isinstance(data, list) or not all(isinstance(e, int) and not isinstance(e, bool) and e >= 0 for e in data):
        raise ParseError(f"a sequence should be a list of naturals and not {data!r}")
    return tuple(data)


def encode_ordinal(alpha: Ordinal) -> str:
    return format_ordinal(alpha)


def decode_ordinal(data) -> Ordinal:
    if isinstance(data, int) and not isinstance(data, bool):
        return Ordinal.of(data)
    if not isinstance(data, str):
        raise ParseError(f"an ordinal should be a string or a natural and not {data!r}")
    return parse_ordinal(data)


def _enum(enum_cls, data):
    try:
        return enum_cls[str(data).upper()]
    except KeyError:
        raise ParseError(f"{data!r} is not one of {[m.name.lower() for m in enum_cls]}")


def encode_tree(tree: FiniteTree) -> list:
    return [encode_seq(s) for s in tree.sorted_nodes()]


def decode_tree(data) -> FiniteTree:
    if not isinstance(data, list):
        raise ParseError("a finite tree should be a list of nodes")
    return FiniteTree(frozenset(decode_seq(s) for s in data))


# Dispatch


def encode(obj) -> Dict[str, Any]:
    encoder = _ENCODERS.get(type(obj))
    if encoder is None:
        raise ParseError(f"no JSON encoding for {type(obj).__name__}")
    return encoder(obj)


def decode(data) -> Any:
    if not isinstance(data, dict) or "type" not in data:
        raise ParseError(f"expected an object with a 'type' field and not {data!r}")
    decoder = _DECODERS.get(data["type"])
    if decoder is None:
        raise ParseError(f"unknown type {data['type']!r}")
    try:
        return decoder(data)
    except BorelkitError:
        raise
    except (KeyError, TypeError, ValueError, AttributeError) as e:
        raise ParseError(f"malformed {data['type']!r} document: {e!r}") from e


def decode_as(data, expected: Type) -> Any:
    obj = decode(data)
    if not isinstance(obj, expected):
        raise ParseError(f"expected a {expected.__name__} and not {type(obj).__name__}")
    return obj


# Trees

register(Empty, "empty", lambda t: {}, lambda d: Empty())
register(Point, "point", lambda t: {}, lambda d: Point())
register(Full, "full", lambda t: {}, lambda d: Full())
register(Ray, "ray", lambda t: {"entry": t.entry}, lambda d: Ray(d.get("entry", 0)))
register(
    Graft,
    "graft",
    lambda t: {"head": encode_seq(t.head), "sub": encode(t.sub)},
    lambda d: Graft(decode_seq(d["head"]), decode(d["sub"])),
)
register(Explicit, "explicit", lambda t: {"nodes": encode_tree(t.tree)}, lambda d: Explicit(decode_tree(d["nodes"])))
register(JoinOmega, "join_omega", lambda t: {"family": encode(t.family)}, lambda d: JoinOmega(decode(d["family"])))
register(
    JoinFinite,
    "join_finite",
    lambda t: {"branches": [{"head": encode_seq(f), "sub": encode(sub)} for f, sub in t.branches]},
    lambda d: JoinFinite(tuple((decode_seq(b["head"]), decode(b["sub"])) for b in d["branches"])),
)
register(Constant, "constant", lambda f: {"sub": encode(f.sub)}, lambda d: Constant(decode(d["sub"])))
register(
    PrefixThenConstant,
    "prefix_then_constant",
    lambda f: {"prefix": [encode(sub) for sub in f.prefix], "tail": encode(f.tail)},
    lambda d: PrefixThenConstant(tuple(decode(sub) for sub in d["prefix"]), decode(d["tail"])),
)
register(
    CanonicalSeq,
    "canonical_seq",
    lambda f: {"lam": encode_ordinal(f.lam), "shift": encode_ordinal(f.shift), "enumeration": f.enumeration.name},
    lambda d: CanonicalSeq(
        decode_ordinal(d["lam"]),
        decode_ordinal(d.get("shift", 0)),
        _enum(LimitEnumeration, d.get("enumeration", "interleaved")),
    ),
)
register(
    Periodic,
    "periodic",
    lambda f: {"members": [encode(sub) for sub in f.members]},
    lambda d: Periodic(tuple(decode(sub) for sub in d["members"])),
)
register(
    PatchedMembers,
    "patched_members",
    lambda f: {"base": encode(f.base), "patches": [{"index": n, "sub": encode(sub)} for n, sub in f.patches]},
    lambda d: PatchedMembers(decode(d["base"]), tuple((row["index"], decode(row["sub"])) for row in d["patches"])),
)
register(
    LadderClosure,
    "ladder_closure",
    lambda f: {
        "lam": encode_ordinal(f.lam),
        "base": f.base,
        "word": encode_seq(f.word),
        "enumeration": f.enumeration.name,
        "leaf": encode(f.leaf),
        "shift": encode_ordinal(f.shift),
        "kind": f.kind.name if f.kind is not None else None,
    },
    lambda d: LadderClosure(
        decode_ordinal(d["lam"]),
        d.get("base", 0),
        decode_seq(d.get("word", [])),
        _enum(LimitEnumeration, d.get("enumeration", "interleaved")),
        decode(d["leaf"]),
        decode_ordinal(d.get("shift", 0)),
        _enum(DerivativeKind, d["kind"]) if d.get("kind") is not None else None,
    ),
)

# Set expressions and schemes

register(Base, "base", lambda e: {"value": encode_subset(e.value)}, lambda d: Base(decode_subset(d["value"])))
register(
    Union,
    "union",
    lambda e: {"items": [encode(i) for i in e.items]},
    lambda d: Union(tuple(decode(i) for i in d["items"])),
)
register(
    Inter,
    "inter",
    lambda e: {"items": [encode(i) for i in e.items]},
    lambda d: Inter(tuple(decode(i) for i in d["items"])),
)
register(
    Universe,
    "universe",
    lambda u: {"elements": encode_subset(u.elements)},
    lambda d: Universe(decode_subset(d["elements"])),
)


def _encode_table(values) -> list:
    return [{"node": encode_seq(s), "value": encode_subset(v)} for s, v in sorted(values.items())]


def _decode_table(rows) -> dict:
    return {decode_seq(row["node"]): decode_subset(row["value"]) for row in rows}


register(
    LeafScheme,
    "leaf_scheme",
    lambda h: {"tree": encode_tree(h.tree), "assign": _encode_table(h.assign)},
    lambda d: LeafScheme(decode_tree(d["tree"]), _decode_table(d["assign"])),
)


def _decode_suslin(d) -> SuslinScheme:
    values = _decode_table(d["values"])
    universe = Universe(decode_subset(d["universe"]))
    return SuslinScheme(universe, FiniteTree(frozenset(values)), values)


register(
    SuslinScheme,
    "suslin_scheme",
    lambda c: {"universe": encode_subset(c.universe.elements), "values": _encode_table(c.values)},
    _decode_suslin,
)

# Brooms


def _encode_branches(branches) -> list:
    return [{"head": encode_seq(f), "sub": encode(sub)} for f, sub in branches]


def _decode_branches(rows) -> tuple:
    return tuple((decode_seq(row["head"]), decode_as(row["sub"], BroomExpr)) for row in rows)


register(Trivial, "trivial", lambda b: {}, lambda d: Trivial())
register(
    Handle,
    "handle",
    lambda b: {"head": encode_seq(b.head), "sub": encode(b.sub)},
    lambda d: Handle(decode_seq(d["head"]), decode_as(d["sub"], BroomExpr)),
)
register(Fork, "fork", lambda b: {"family": encode(b.family)}, lambda d: Fork(decode(d["family"])))
register(
    FiniteList,
    "finite_list",
    lambda f: {"branches": _encode_branches(f.branches), "period": f.period},
    lambda d: FiniteList(_decode_branches(d["branches"]), d.get("period")),
)
register(
    UniformTail,
    "uniform_tail",
    lambda f: {"prefix": _encode_branches(f.prefix), "base": f.base, "word": encode_seq(f.word), "sub": encode(f.sub)},
    lambda d: UniformTail(
        _decode_branches(d.get("prefix", [])),
        d.get("base", 0),
        decode_seq(d.get("word", [])),
        decode_as(d["sub"], BroomExpr),
    ),
)
register(
    RankLadder,
    "rank_ladder",
    lambda f: {
        "lam": encode_ordinal(f.lam),
        "base": f.base,
        "word": encode_seq(f.word),
        "enumeration": f.enumeration.name,
        "cap": encode(f.cap),
    },
    lambda d: RankLadder(
        decode_ordinal(d["lam"]),
        d.get("base", 0),
        decode_seq(d.get("word", [])),
        _enum(LimitEnumeration, d.get("enumeration", "interleaved")),
        decode_as(d["cap"], BroomExpr) if "cap" in d else Trivial(),
    ),
)
register(
    PatchedBranches,
    "patched_branches",
    lambda f: {"family": encode(f.family), "subs": [{"first": e, "sub": encode(sub)} for e, sub in f.subs]},
    lambda d: PatchedBranches(
        decode(d["family"]), tuple((row["first"], decode_as(row["sub"], BroomExpr)) for row in d["subs"])
    ),
)
register(
    ConeStrategy,
    "cone_strategy",
    lambda s: {
        "offset": s.offset,
        "word": encode_seq(s.word),
        "tail_prefix": encode_seq(s.tail_prefix),
        "tail_entry": s.tail_entry,
    },
    lambda d: ConeStrategy(
        d.get("offset", 0), decode_seq(d.get("word", [])), decode_seq(d.get("tail_prefix", [])), d.get("tail_entry", 0)
    ),
)
register(
    ListedStrategy,
    "listed_strategy",
    lambda s: {
        "heads": [encode_seq(h) for h in s.heads],
        "period": s.period,
        "tail_prefix": encode_seq(s.tail_prefix),
        "tail_entry": s.tail_entry,
    },
    lambda d: ListedStrategy(
        tuple(decode_seq(h) for h in d["heads"]),
        d.get("period"),
        decode_seq(d.get("tail_prefix", [])),
        d.get("tail_entry", 0),
    ),
)
register(
    InfBroomExpr,
    "inf_broom",
    lambda a: {
        "base": encode(a.base),
        "strategy": encode(a.strategy),
        "per_leaf": [{"leaf": encode_seq(h), "strategy": encode(strategy)} for h, strategy in a.per_leaf],
    },
    lambda d: InfBroomExpr(
        decode_as(d["base"], BroomExpr),
        decode(d["strategy"]) if "strategy" in d else ConeStrategy(),
        tuple((decode_seq(row["leaf"]), decode(row["strategy"])) for row in d.get("per_leaf", [])),
    ),
)

# Finite spaces


def _decode_space(d) -> FinSpace:
    points = decode_subset(d["points"])
    if "preorder" in d:
        return from_preorder(points, [(decode_atom(x), decode_atom(y)) for x, y in d["preorder"]])
    return FinSpace(points, frozenset(decode_subset(u) for u in d["opens"]))


register(
    FinSpace,
    "space",
    lambda x: {"points": encode_subset(x.points), "opens": [[encode_atom(p) for p in u] for u in x.sorted_opens()]},
    _decode_space,
)

# Plain values, so that verify counterexamples can carry them

register(FiniteTree, "finite_tree", lambda t: {"nodes": encode_tree(t)}, lambda d: decode_tree(d["nodes"]))
register(Ordinal, "ordinal", lambda a: {"value": encode_ordinal(a)}, lambda d: decode_ordinal(d["value"]))
