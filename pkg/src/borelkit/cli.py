"""
borelkit command line

Usage:
```
borelkit rank --kind l --tree canonical-w1.json
borelkit derive --kind iie --tree closure.json --iterate "w + 1" --format dot --depth 3 --width 3
borelkit broom classify --in fork.json
borelkit verify --suite rt-oracle --seed 7 --cases 500
```

Every command prints one JSON document (or DOT text with ``--format dot``). Exit codes: 0 on success, 2 on a
parse error, 3 on a violated precondition, 4 when a property fails.
"""
import argparse
import json
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

import dacite
import yaml

from borelkit import logging
from borelkit.broom import (
    BroomExpr,
    InfBroomExpr,
    almost_disjoint_check,
    broom_closure_tree,
    broom_diie,
    classify_broom,
    extend_broom,
    rank_lemma_check,
)
from borelkit.broom.extension import ExtensionStrategy
from borelkit.config import BoundsArgs, Config, VerifyArgs, get_config_from_file
from borelkit.config.utils_config import LimitEnumeration, OutputFormat, cast_str_to_derivative_kind
from borelkit.derive.derivatives import iterate
from borelkit.derive.ranks import rank
from borelkit.exceptions import BorelkitError, ParseError, PreconditionError, PropertyFailure
from borelkit.fintop import (
    amalgamate,
    check_axioms_a,
    closed_copy,
    v_algebra_holds,
    w_laws,
    w_operator,
    zoom_space,
)
from borelkit.fintop.handles import gamma_handles, handle_partition_check
from borelkit.fintop.space import FinSpace, sorted_points
from borelkit.ordinal import enumerate_limit, enumeration_index, format_ordinal, parse_ordinal
from borelkit.schemes.leaf import LeafScheme, compile_simple, eval_scheme
from borelkit.schemes.setexpr import SetExpr, evaluate, set_class
from borelkit.serialize.codec import decode_atom, decode_subset, encode_atom, encode_subset
from borelkit.serialize.metadata import dumps, load_object, to_document
from borelkit.suslin.compile import compile_regular
from borelkit.suslin.engine import r_alpha, rt_member
from borelkit.suslin.remainder import fa_sufficiency_check
from borelkit.suslin.scheme import SuslinScheme, suslin_operation
from borelkit.trees.canonical import canonical_tree, canonical_tree_c
from borelkit.trees.expr import TreeExpr, member, truncate
from borelkit.trees.export import graph_to_dot, highlight_to_dot, tree_to_dot
from borelkit.verify import rerun_counterexample, run_suite

logger = logging.get_logger(__name__)


class Output:
    """A JSON result, optionally with a DOT rendering."""

    def __init__(self, data: Dict[str, Any], dot: Optional[str] = None):
        self.data = data
        self.dot = dot


# Input helpers


def _load(path: Path, expected=None):
    obj = load_object(path)
    if expected is not None and not isinstance(obj, expected):
        names = expected.__name__ if isinstance(expected, type) else " or ".join(t.__name__ for t in expected)
        raise ParseError(f"{path} should hold a {names} and not a {type(obj).__name__}")
    return obj


def _json_arg(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON argument {text!r}: {e}") from e


def _subset_arg(text: str):
    return decode_subset(_json_arg(text))


def _point_arg(text: str):
    try:
        return decode_atom(json.loads(text))
    except json.JSONDecodeError:
        return text


def _seq_arg(text: str):
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(e) for e in text.split(","))
    except ValueError as e:
        raise ParseError(f"a sequence is written 0,1,2 and not {text!r}") from e


def _tree_output(t: TreeExpr, bounds: BoundsArgs, name: str = "T") -> Output:
    return Output(to_document(t), tree_to_dot(truncate(t, bounds.depth, bounds.width), name))


def _space_output(data: Dict[str, Any], space: FinSpace) -> Output:
    return Output(data, graph_to_dot(space.specialization_graph(), "X"))


# Commands


def cmd_ord(args, config: Config) -> Output:
    alpha = parse_ordinal(args.alpha)
    if args.action == "show":
        limit, n, i = alpha.decompose()
        return Output(
            {
                "ordinal": format_ordinal(alpha),
                "limit": format_ordinal(limit),
                "n": n,
                "parity": i,
                "alpha_prime": format_ordinal(alpha.alpha_prime()),
            }
        )
    if args.action == "pi":
        return Output({"value": format_ordinal(enumerate_limit(alpha, args.n, config.enumeration))})
    if args.beta is None:
        raise ParseError(f"ord {args.action} takes a second ordinal")
    beta = parse_ordinal(args.beta)
    if args.action == "add":
        return Output({"sum": format_ordinal(alpha + beta)})
    return Output({"index": enumeration_index(alpha, beta, config.enumeration)})


def cmd_tree(args, config: Config) -> Output:
    if args.action == "canonical":
        alpha = parse_ordinal(args.alpha)
        if args.c:
            t = canonical_tree_c(alpha, args.n, config.enumeration)
        else:
            t = canonical_tree(alpha, config.enumeration)
        return _tree_output(t, config.bounds)
    t = _load(args.tree, TreeExpr)
    if args.action == "truncate":
        tree = truncate(t, config.bounds.depth, config.bounds.width)
        return Output(to_document(tree), tree_to_dot(tree))
    return Output({"member": member(t, _seq_arg(args.seq))})


def cmd_rank(args, config: Config) -> Output:
    t = _load(args.tree, TreeExpr)
    return Output({"rank": str(rank(cast_str_to_derivative_kind(args.kind), t))})


def cmd_derive(args, config: Config) -> Output:
    t = _load(args.tree, TreeExpr)
    kind = cast_str_to_derivative_kind(args.kind)
    derived = iterate(kind, t, parse_ordinal(args.iterate))
    truncated = truncate(t, config.bounds.depth, config.bounds.width)
    survivors = truncate(derived, config.bounds.depth, config.bounds.width).nodes
    return Output(to_document(derived), highlight_to_dot(truncated, survivors, f"D_{kind.name.lower()}"))


def cmd_scheme(args, config: Config) -> Output:
    if args.action == "eval":
        h = _load(args.input, LeafScheme)
        return Output({"value": encode_subset(eval_scheme(h))})
    e = _load(args.expr, SetExpr)
    if args.action == "class":
        return Output({"class": format_ordinal(set_class(e)), "value": encode_subset(evaluate(e))})
    width = args.width if args.width is not None else config.bounds.width
    return Output(to_document(compile_simple(e, parse_ordinal(args.alpha), width, config.enumeration)))


def _closure_of(space_path: Optional[Path]) -> Optional[Callable]:
    if space_path is None:
        return None
    return _load(space_path, FinSpace).closure


def cmd_rt(args, config: Config) -> Output:
    if args.action == "compile":
        e = _load(args.expr, SetExpr)
        width = args.width if args.width is not None else config.bounds.width
        return Output(to_document(compile_regular(e, parse_ordinal(args.alpha), width)))
    c = _load(args.scheme, SuslinScheme)
    if args.action == "member":
        t = _load(args.tree, TreeExpr)
        return Output({"member": rt_member(c, t, _point_arg(args.point), _seq_arg(args.head))})
    if args.action == "ralpha":
        value = r_alpha(c, parse_ordinal(args.alpha), args.n, config.enumeration)
        return Output({"value": encode_subset(value)})
    if args.action == "suslin-op":
        return Output({"value": encode_subset(suslin_operation(c))})
    x = _subset_arg(args.x) if args.x is not None else suslin_operation(c)
    report = fa_sufficiency_check(c, _closure_of(args.space), x, parse_ordinal(args.alpha))
    return Output(
        {
            "alpha": format_ordinal(report.alpha),
            "passed": report.passed,
            "case": report.case,
            "witness": report.witness,
            "failures": [encode_atom(v.point) for v in report.failures],
        }
    )


def cmd_broom(args, config: Config) -> Output:
    if args.action == "check-ad":
        family = [_load(path, InfBroomExpr) for path in args.input]
        return Output({"almost_disjoint": almost_disjoint_check(family, args.width)})
    x = _load(args.input[0], (BroomExpr, InfBroomExpr))
    if args.action == "classify":
        base = x.base if isinstance(x, InfBroomExpr) else x
        return Output({"rank": format_ordinal(classify_broom(base))})
    if args.action == "extend":
        if isinstance(x, InfBroomExpr):
            raise PreconditionError("extend takes a finite broom")
        strategy = _load(args.strategy, ExtensionStrategy) if args.strategy is not None else None
        return Output(to_document(extend_broom(x, strategy)))
    if args.action == "diie":
        if isinstance(x, InfBroomExpr):
            return _tree_output(broom_diie(x), config.bounds, "D_iie")
        return _tree_output(broom_closure_tree(x), config.bounds, "cl")
    report = rank_lemma_check(x)
    return Output(
        {
            "alpha": format_ordinal(report.alpha),
            "alpha_prime": format_ordinal(report.alpha_prime),
            "extension": report.extension,
            "finite": report.finite,
            "within_point": report.within_point,
            "passed": report.passed,
            "optimal": report.optimal,
            "surviving": [list(s) for s in report.surviving],
        }
    )


def _parts_arg(items: List[str]) -> Dict[Any, FinSpace]:
    parts = {}
    for item in items or []:
        key, sep, path = item.partition("=")
        if not sep:
            raise ParseError(f"a zoomed part is written POINT=FILE and not {item!r}")
        parts[_point_arg(key)] = _load(Path(path), FinSpace)
    return parts


def cmd_topo(args, config: Config) -> Output:
    if args.action == "handles":
        a = _load(args.input, InfBroomExpr)
        width = args.width if args.width is not None else config.bounds.width
        gamma = parse_ordinal(args.gamma)
        report = handle_partition_check(a, gamma, width)
        return Output(
            {
                "handles": sorted(list(h) for h in gamma_handles(a, gamma, width)),
                "passed": report.passed,
                "covered": report.covered,
                "incomparable": report.incomparable,
                "prefix_property": report.prefix_property,
            }
        )
    space = _load(args.space, FinSpace)
    if args.action == "zoom":
        zoom = zoom_space(space, _parts_arg(args.part))
        data = {**to_document(zoom.space), "v_algebra": v_algebra_holds(zoom), **zoom.postconditions()}
        if zoom.parts:
            selector = {i: sorted_points(part.points)[0] for i, part in zoom.parts.items()}
            copy = closed_copy(zoom, selector)
            data["closed_copy"] = {
                "points": encode_subset(copy.points),
                "homeomorphic": copy.homeomorphic,
                "closed": copy.closed,
            }
        return _space_output(data, zoom.space)
    if args.action == "w-op":
        p = _subset_arg(args.p)
        if args.g is not None:
            return Output({"value": encode_subset(w_operator(space, p, _subset_arg(args.g)))})
        return Output({"laws": w_laws(space, p)})
    family = [decode_subset(a) for a in _json_arg(args.family)]
    if args.action == "check-a-axioms":
        report = check_axioms_a(space, family, args.max_exceptions)
        return Output(
            {
                "A1": report.a1,
                "A2": report.a2,
                "A3": report.a3,
                "A4": report.a4,
                "passed": report.passed,
                "notes": report.notes,
                "not_clopen": [encode_subset(a) for a in report.not_clopen],
            }
        )
    extensions = {n: _load(path, FinSpace) for n, path in enumerate(args.extension or [])}
    amalgamation = amalgamate(space, family, extensions)
    return _space_output({**to_document(amalgamation.space), **amalgamation.postconditions()}, amalgamation.space)


def cmd_verify(args, config: Config) -> Output:
    if args.rerun is not None:
        message = rerun_counterexample(args.rerun)
        if message is not None:
            raise PropertyFailure(message, args.rerun)
        return Output({"counterexample": str(args.rerun), "passed": True})
    report = run_suite(config.verify, config.bounds)
    if not report.passed:
        first = report.failures[0]
        raise PropertyFailure(
            f"{report.failure_count}/{report.cases} cases failed, first at case {first.case}: {first.message}",
            report.counterexample_path,
        )
    return Output(report.to_dict())


COMMANDS: Dict[str, Callable[[argparse.Namespace, Config], Output]] = {
    "ord": cmd_ord,
    "tree": cmd_tree,
    "rank": cmd_rank,
    "derive": cmd_derive,
    "scheme": cmd_scheme,
    "rt": cmd_rt,
    "broom": cmd_broom,
    "topo": cmd_topo,
    "verify": cmd_verify,
}


def get_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="borelkit", description=__doc__.split("\n")[1])
    parser.add_argument("--config-file", type=Path, default=None, help="YAML config file")
    parser.add_argument("--format", choices=["json", "dot"], default=None)
    parser.add_argument("--log-level", default=None, choices=["debug", "info", "warning", "error", "critical"])
    parser.add_argument("--depth", type=int, default=None, help="Depth of truncations and random instances")
    parser.add_argument("--width", dest="bound_width", type=int, default=None, help="Width of truncations")
    parser.add_argument("--universe", type=int, default=None, help="Size bound of random universes")
    parser.add_argument("--enumeration", choices=["interleaved", "swapped"], default=None)
    parser.add_argument("--out", type=Path, default=None, help="Write the result here instead of stdout")
    commands = parser.add_subparsers(dest="command", required=True)

    ord_parser = commands.add_parser("ord", help="Ordinal arithmetic")
    ord_parser.add_argument("action", choices=["show", "add", "pi", "index"])
    ord_parser.add_argument("alpha")
    ord_parser.add_argument("beta", nargs="?")
    ord_parser.add_argument("--n", type=int, default=0)

    tree_parser = commands.add_parser("tree", help="Canonical trees, truncations and membership")
    tree_parser.add_argument("action", choices=["canonical", "truncate", "member"])
    tree_parser.add_argument("--alpha", default="0")
    tree_parser.add_argument("--c", action="store_true", help="The re-enumerated tree T^c_alpha")
    tree_parser.add_argument("--n", type=int, default=None)
    tree_parser.add_argument("--tree", type=Path)
    tree_parser.add_argument("--seq", default="")

    rank_parser = commands.add_parser("rank", help="r_l, r_i or r_iie of a tree")
    rank_parser.add_argument("--kind", default="l", choices=["l", "i", "iie"])
    rank_parser.add_argument("--tree", type=Path, required=True)

    derive_parser = commands.add_parser("derive", help="Iterated derivative of a tree")
    derive_parser.add_argument("--kind", default="l", choices=["l", "i", "iie"])
    derive_parser.add_argument("--tree", type=Path, required=True)
    derive_parser.add_argument("--iterate", default="1")

    scheme_parser = commands.add_parser("scheme", help="Set expressions and leaf-schemes")
    scheme_parser.add_argument("action", choices=["eval", "class", "compile"])
    scheme_parser.add_argument("--in", dest="input", type=Path)
    scheme_parser.add_argument("--expr", type=Path)
    scheme_parser.add_argument("--alpha", default="0")
    scheme_parser.add_argument("--width", type=int, default=None)

    rt_parser = commands.add_parser("rt", help="Suslin schemes and R_T sets")
    rt_parser.add_argument("action", choices=["member", "ralpha", "compile", "suslin-op", "check-fa"])
    rt_parser.add_argument("--scheme", type=Path)
    rt_parser.add_argument("--tree", type=Path)
    rt_parser.add_argument("--expr", type=Path)
    rt_parser.add_argument("--point")
    rt_parser.add_argument("--head", default="")
    rt_parser.add_argument("--alpha", default="0")
    rt_parser.add_argument("--n", type=int, default=None)
    rt_parser.add_argument("--width", type=int, default=None)
    rt_parser.add_argument("--x", default=None, help="JSON list of points")
    rt_parser.add_argument("--space", type=Path, default=None, help="Closures are taken in this space")

    broom_parser = commands.add_parser("broom", help="Broom sets and their extensions")
    broom_parser.add_argument("action", choices=["classify", "extend", "diie", "check-rank", "check-ad"])
    broom_parser.add_argument("--in", dest="input", type=Path, nargs="+", required=True)
    broom_parser.add_argument("--strategy", type=Path, default=None)
    broom_parser.add_argument("--width", type=int, default=None)

    topo_parser = commands.add_parser("topo", help="Finite spaces: zoom, amalgamation, W operator")
    topo_parser.add_argument("action", choices=["zoom", "amalgamate", "w-op", "check-a-axioms", "handles"])
    topo_parser.add_argument("--space", type=Path)
    topo_parser.add_argument("--part", action="append", help="POINT=FILE, repeatable")
    topo_parser.add_argument("--family", default="[]", help="JSON list of point lists")
    topo_parser.add_argument("--extension", type=Path, action="append", help="One per family member, in order")
    topo_parser.add_argument("--p", default="[]")
    topo_parser.add_argument("--g", default=None)
    topo_parser.add_argument("--max-exceptions", type=int, default=None)
    topo_parser.add_argument("--in", dest="input", type=Path)
    topo_parser.add_argument("--gamma", default="2")
    topo_parser.add_argument("--width", type=int, default=None)

    verify_parser = commands.add_parser("verify", help="Run a property suite")
    verify_parser.add_argument("--suite", default=None)
    verify_parser.add_argument("--seed", type=int, default=None)
    verify_parser.add_argument("--cases", type=int, default=None)
    verify_parser.add_argument("--counterexample-dir", type=Path, default=None)
    verify_parser.add_argument("--rerun", type=Path, default=None, help="Check a saved counterexample again")
    return parser


def _verify_args(args: argparse.Namespace, verify: Optional[VerifyArgs]) -> VerifyArgs:
    """Command line options override the verify section of the config file."""
    if verify is None:
        if args.suite is None:
            raise ParseError("verify needs --suite or a config file with a verify section")
        verify = VerifyArgs(suite=args.suite)
    overrides = {
        "suite": args.suite,
        "seed": args.seed,
        "cases": args.cases,
        "counterexample_dir": args.counterexample_dir,
    }
    for name, value in overrides.items():
        if value is not None:
            setattr(verify, name, value)
    verify.__post_init__()
    return verify


def _config_from_args(args: argparse.Namespace) -> Config:
    config = get_config_from_file(args.config_file) if args.config_file is not None else Config()
    if args.log_level is not None:
        config.logging.log_level = args.log_level
    bounds = {"depth": args.depth, "width": args.bound_width, "universe": args.universe}
    for name, value in bounds.items():
        if value is not None:
            setattr(config.bounds, name, value)
    config.bounds.__post_init__()
    if args.format is not None:
        config.output_format = OutputFormat[args.format.upper()]
    if args.enumeration is not None:
        config.enumeration = LimitEnumeration[args.enumeration.upper()]
    if args.command == "verify" and args.rerun is None:
        config.verify = _verify_args(args, config.verify)
    return config


def render(output: Output, output_format: OutputFormat) -> str:
    if output_format is OutputFormat.DOT:
        if output.dot is None:
            raise PreconditionError("DOT output is only available for trees and spaces")
        return output.dot
    return dumps(output.data) + "\n"


def run(argv: Optional[List[str]] = None) -> int:
    """Run one command; returns the exit status instead of exiting."""
    parser = get_parser()
    args = parser.parse_args(argv)
    try:
        try:
            config = _config_from_args(args)
        except BorelkitError:
            raise
        except (ValueError, KeyError, OSError, dacite.DaciteError, yaml.YAMLError) as e:
            raise ParseError(f"invalid configuration: {e}") from e
        logging.set_logger_verbosity_format(config.logging.log_level)
        text = render(COMMANDS[args.command](args, config), config.output_format)
    except BorelkitError as e:
        error = {"error": type(e).__name__, "message": str(e)}
        if isinstance(e, PropertyFailure) and e.counterexample_path is not None:
            error["counterexample"] = str(e.counterexample_path)
        sys.stderr.write(dumps(error) + "\n")
        return e.exit_code
    if args.out is not None:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        args.out.write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
