"""
Command-line front end.

Exit codes: 0 on success, 1 on a domain error, 2 on a usage error.
"""

import argparse
import logging
import sys
from typing import List, Optional, Sequence, Tuple

from pydantic import ValidationError

from connspace.config import get_settings, override_settings
from connspace.core import space_format
from connspace.core.bitset import count_bits
from connspace.core.dot_renderer import render_generic_graph
from connspace.core.exceptions import ConnSpaceError
from connspace.models.document import SpaceDocument
from connspace.models.space import ConnSpace, PointedConnSpace, PointMap
from connspace.services.analysis_service import analysis_service
from connspace.services.catalog_service import catalog_service
from connspace.services.construction_service import construction_service
from connspace.services.generation_service import generation_service
from connspace.services.hom_service import hom_service
from connspace.services.pointed_service import pointed_service
from connspace.services.space_service import space_service

logger = logging.getLogger("connspace.cli")


class UsageError(Exception):
    """Bad command-line input detected after argument parsing."""


# ===========================================
# HELPERS
# ===========================================


def _load(path: str) -> Tuple[SpaceDocument, ConnSpace]:
    document = space_format.load(path)
    return document, space_format.to_space(document)


def _emit(space: ConnSpace, name: str, base: Optional[int] = None) -> None:
    sys.stdout.write(space_format.serialize(space_format.from_space(space, name, base)))


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def _split_labels(value: str) -> List[str]:
    labels = [label.strip() for label in value.split(",") if label.strip()]
    if not labels:
        raise UsageError(f"empty label list '{value}'")
    return labels


def _parse_map(value: str, source: ConnSpace, target: ConnSpace) -> PointMap:
    """Map given as a=p,b=q,... covering every source point."""
    table = [-1] * source.size
    for item in _split_labels(value):
        left, sep, right = item.partition("=")
        if not sep:
            raise UsageError(f"map entry '{item}' is not of the form a=p")
        table[source.ground.index_of(left.strip())] = target.ground.index_of(right.strip())
    missing = [source.label(p) for p, target_point in enumerate(table) if target_point < 0]
    if missing:
        raise UsageError(f"map does not assign the points {' '.join(missing)}")
    return PointMap(source=source.ground, target=target.ground, table=tuple(table))


def _pointed(document: SpaceDocument, space: ConnSpace, base: Optional[str]) -> PointedConnSpace:
    label = base if base is not None else document.base
    if label is None:
        raise UsageError(f"space {document.name} needs a base point (--base LABEL)")
    return PointedConnSpace(space=space, base=space.ground.index_of(label))


# ===========================================
# COMMANDS
# ===========================================


def cmd_validate(args: argparse.Namespace) -> int:
    document, space = _load(args.file)
    print(f"valid: {document.name} ({space.size} points, {len(space.structure)} connected sets)")
    return 0


def cmd_generate(args: argparse.Namespace) -> int:
    _, space = _load(args.file)
    for member in space.members:
        if args.nontrivial and count_bits(member) < 2:
            continue
        print(space.describe(member))
    return 0


def cmd_format(args: argparse.Namespace) -> int:
    document, space = _load(args.file)
    base = space.ground.index_of(document.base) if document.base is not None else None
    _emit(space, document.name, base)
    return 0


def cmd_info(args: argparse.Namespace) -> int:
    document, space = _load(args.file)
    info = analysis_service.space_info(space, document.name)
    print(f"space: {info.name}")
    print(f"points: {info.points}")
    print(f"connected: {_yes(info.connected)}")
    print(f"components: {info.components if info.components is not None else '-'}")
    print(f"irreducible: {_yes(info.irreducible)}")
    print(f"distinguished: {_yes(info.distinguished)}")
    print(f"index: {info.index if info.index is not None else '-'}")
    return 0


def cmd_irreducibles(args: argparse.Namespace) -> int:
    _, space = _load(args.file)
    for member in analysis_service.irreducibles(space).members:
        print(space.describe(member))
    return 0


def cmd_graph(args: argparse.Namespace) -> int:
    document, space = _load(args.file)
    graph = analysis_service.generic_graph(space)
    if args.dot:
        print(render_generic_graph(graph, document.name))
        return 0
    for source, target in sorted(graph.edges):
        print(f"{space.describe(graph.vertices[source])} -> {space.describe(graph.vertices[target])}")
    for sink in graph.sinks():
        if not any(sink in edge for edge in graph.edges):
            print(space.describe(graph.vertices[sink]))
    return 0


def cmd_binary(args: argparse.Namespace) -> int:
    doc_a, a = _load(args.a)
    doc_b, b = _load(args.b)
    name = f"{args.command}({doc_a.name},{doc_b.name})"
    if args.command in ("smash", "wedge"):
        x1 = _pointed(doc_a, a, args.base[0] if args.base else None)
        x2 = _pointed(doc_b, b, args.base[1] if args.base and len(args.base) > 1 else None)
        result = pointed_service.smash(x1, x2) if args.command == "smash" else pointed_service.wedge(x1, x2)
        _emit(result.space, name, result.base)
        return 0
    operations = {
        "product": construction_service.product,
        "coproduct": construction_service.coproduct,
        "tensor": construction_service.tensor,
        "meet": generation_service.structure_meet,
        "join": generation_service.structure_join,
    }
    _emit(operations[args.command](a, b), name)
    return 0


def cmd_quotient(args: argparse.Namespace) -> int:
    document, space = _load(args.file)
    merges = [[space.ground.index_of(label) for label in _split_labels(group)] for group in args.merge or []]
    partition = construction_service.merge_partition(space.size, merges)
    _emit(construction_service.quotient(space, partition), f"quotient({document.name})")
    return 0


def cmd_subspace(args: argparse.Namespace) -> int:
    document, space = _load(args.file)
    subset = space.ground.mask_of(_split_labels(args.keep))
    _emit(construction_service.subspace(space, subset), f"subspace({document.name})")
    return 0


def cmd_compose(args: argparse.Namespace) -> int:
    doc_x, x = _load(args.x)
    doc_y, y = _load(args.y)
    if args.all:
        result = catalog_service.compose_all(x, y)
        name = f"compose_all({doc_x.name},{doc_y.name})"
    else:
        point = x.ground.index_of(args.at)
        result = catalog_service.compose_at(x, point, y)
        name = f"compose_at({doc_x.name},{args.at},{doc_y.name})"
    _emit(result, name)
    return 0


def cmd_check_morphism(args: argparse.Namespace) -> int:
    _, x = _load(args.x)
    _, y = _load(args.y)
    f = _parse_map(args.map, x, y)
    if construction_service.is_morphism(f, x, y):
        print("morphism")
        return 0
    witness = next(m for m in x.members if f.image(m) not in y)
    print(f"not a morphism: {x.describe(witness)} -> {y.describe(f.image(witness))}")
    return 1


def cmd_iso(args: argparse.Namespace) -> int:
    _, a = _load(args.a)
    _, b = _load(args.b)
    bijection = space_service.is_isomorphic(a, b)
    print(bijection.describe() if bijection is not None else "not isomorphic")
    return 0


def cmd_homotopy(args: argparse.Namespace) -> int:
    _, x = _load(args.x)
    _, y = _load(args.y)
    _, time = _load(args.time)
    f = _parse_map(args.f, x, y)
    g = _parse_map(args.g, x, y)
    start = time.ground.index_of(args.start) if args.start is not None else 0
    end = time.ground.index_of(args.end) if args.end is not None else time.size - 1
    witness = hom_service.homotopic(f, g, time, x, y, start, end)
    if witness is None:
        print("not homotopic")
        return 0
    print("homotopic")
    for t in range(time.size):
        row = ",".join(f"{x.label(p)}={y.label(witness(t * x.size + p))}" for p in range(x.size))
        print(f"{time.label(t)}: {row}")
    return 0


def cmd_catalog(args: argparse.Namespace) -> int:
    space = catalog_service.by_name(args.name, args.n)
    _emit(space, f"{args.name}{args.n}")
    return 0


# ===========================================
# PARSER
# ===========================================


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="connspace", description="Compute with finite connectivity spaces.")
    parser.add_argument("--max-carrier", type=int, help="largest carrier a construction may build")
    parser.add_argument("--max-family", type=int, help="largest structure a computation may hold")
    parser.add_argument("--log-level", help="logging level (default from CONNSPACE_LOG_LEVEL)")
    commands = parser.add_subparsers(dest="command", required=True)

    for name, handler, helptext in (
        ("validate", cmd_validate, "check a space file"),
        ("format", cmd_format, "print the canonical form of a space file"),
        ("info", cmd_info, "connectivity invariants of a space"),
        ("irreducibles", cmd_irreducibles, "nonempty irreducible connected sets"),
    ):
        sub = commands.add_parser(name, help=helptext)
        sub.add_argument("file")
        sub.set_defaults(handler=handler)

    sub = commands.add_parser("generate", help="print the full generated structure")
    sub.add_argument("file")
    sub.add_argument("--nontrivial", action="store_true", help="omit the empty set and singletons")
    sub.set_defaults(handler=cmd_generate)

    sub = commands.add_parser("graph", help="generic graph of a space")
    sub.add_argument("file")
    sub.add_argument("--dot", action="store_true", help="emit Graphviz DOT")
    sub.set_defaults(handler=cmd_graph)

    for name in ("product", "coproduct", "tensor", "smash", "wedge", "meet", "join"):
        sub = commands.add_parser(name, help=f"{name} of two spaces")
        sub.add_argument("a")
        sub.add_argument("b")
        if name in ("smash", "wedge"):
            sub.add_argument("--base", action="append", help="base point label, once per input")
        sub.set_defaults(handler=cmd_binary)

    sub = commands.add_parser("quotient", help="merge groups of points")
    sub.add_argument("file")
    sub.add_argument("--merge", action="append", help="comma-separated labels to identify")
    sub.set_defaults(handler=cmd_quotient)

    sub = commands.add_parser("subspace", help="induced subspace")
    sub.add_argument("file")
    sub.add_argument("--keep", required=True, help="comma-separated labels to keep")
    sub.set_defaults(handler=cmd_subspace)

    sub = commands.add_parser("compose", help="Brunnian composition of two spaces")
    sub.add_argument("x")
    sub.add_argument("y")
    mode = sub.add_mutually_exclusive_group(required=True)
    mode.add_argument("--at", help="replace the sink of this point")
    mode.add_argument("--all", action="store_true", help="replace every sink")
    sub.set_defaults(handler=cmd_compose)

    sub = commands.add_parser("check-morphism", help="check a map between two spaces")
    sub.add_argument("x")
    sub.add_argument("y")
    sub.add_argument("--map", required=True, help="a=p,b=q,...")
    sub.set_defaults(handler=cmd_check_morphism)

    sub = commands.add_parser("iso", help="find an isomorphism")
    sub.add_argument("a")
    sub.add_argument("b")
    sub.set_defaults(handler=cmd_iso)

    sub = commands.add_parser("homotopy", help="search for a homotopy between two morphisms")
    sub.add_argument("x")
    sub.add_argument("y")
    sub.add_argument("--f", required=True, help="a=p,b=q,...")
    sub.add_argument("--g", required=True, help="a=p,b=q,...")
    sub.add_argument("--time", required=True, help="space file of the time space")
    sub.add_argument("--start", help="start time label (default: first point)")
    sub.add_argument("--end", help="end time label (default: last point)")
    sub.set_defaults(handler=cmd_homotopy)

    sub = commands.add_parser("catalog", help="print a standard space")
    sub.add_argument("name", choices=["discrete", "indiscrete", "brunnian", "v", "order"])
    sub.add_argument("n", type=int)
    sub.set_defaults(handler=cmd_catalog)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    override_settings(
        max_carrier=args.max_carrier,
        max_family=args.max_family,
        log_level=args.log_level,
    )
    level = get_settings().log_level.upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), format="%(levelname)s: %(message)s")

    try:
        return args.handler(args)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print(f"connspace: error: {e}", file=sys.stderr)
        return 2
    except (ConnSpaceError, ValidationError) as e:
        logger.debug(f"Command {args.command} failed", exc_info=True)
        print(f"error: {str(e).splitlines()[0]}", file=sys.stderr)
        return 1
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
