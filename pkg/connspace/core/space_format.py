"""
Reader and writer for the .space text format.

    # comment
    space B3
    points a b c
    connected {a b c}

Optional flag lines: `nonintegral`, `raw` (the listed sets are the whole
structure and are validated instead of generated) and `base LABEL` for
pointed inputs. The empty set is always connected and never written.
"""

import logging
from typing import List, Optional, Tuple

from connspace.core.bitset import count_bits, iter_indexes
from connspace.core.exceptions import ParseError, UnknownLabel
from connspace.models.document import SpaceDocument
from connspace.models.space import ConnSpace, GroundSet, SubsetFamily
from connspace.services.analysis_service import analysis_service
from connspace.services.generation_service import generation_service
from connspace.services.space_service import space_service

logger = logging.getLogger(__name__)

_FLAGS = ("nonintegral", "raw")


def _strip_comment(line: str) -> str:
    index = line.find("#")
    return line if index < 0 else line[:index]


def _parse_set(body: str, offset: int, line_no: int, known: List[str]) -> Tuple[str, ...]:
    text = body.strip()
    column = offset + (len(body) - len(body.lstrip())) + 1
    if not text.startswith("{"):
        raise ParseError("expected '{' to open a connected set", line_no, column)
    if not text.endswith("}"):
        raise ParseError("expected '}' to close a connected set", line_no, column + len(text) - 1)
    inner = text[1:-1]
    if "{" in inner or "}" in inner:
        raise ParseError("nested braces in a connected set", line_no, column)
    labels = inner.split()
    for label in labels:
        if label not in known:
            raise UnknownLabel(label, line_no)
    return tuple(labels)


def parse(text: str) -> SpaceDocument:
    """Parse a .space document."""
    name: Optional[str] = None
    points: Optional[List[str]] = None
    connected: List[Tuple[str, ...]] = []
    flags = set()
    base: Optional[str] = None

    for line_no, raw_line in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw_line).rstrip()
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip())
        keyword, _, rest = line.strip().partition(" ")
        rest_offset = indent + len(keyword) + 1

        if keyword == "space":
            if name is not None:
                raise ParseError("duplicate 'space' line", line_no, indent + 1)
            tokens = rest.split()
            if len(tokens) != 1:
                raise ParseError("'space' takes exactly one name", line_no, rest_offset + 1)
            name = tokens[0]
        elif keyword == "points":
            if points is not None:
                raise ParseError("duplicate 'points' line", line_no, indent + 1)
            points = rest.split()
            if len(set(points)) != len(points):
                raise ParseError("point labels must be pairwise distinct", line_no, rest_offset + 1)
            for label in points:
                if any(ch in label for ch in "{}"):
                    raise ParseError(f"invalid point label '{label}'", line_no, rest_offset + 1)
        elif keyword == "connected":
            if points is None:
                raise ParseError("'connected' before 'points'", line_no, indent + 1)
            connected.append(_parse_set(rest, rest_offset, line_no, points))
        elif keyword in _FLAGS:
            if rest.strip():
                raise ParseError(f"'{keyword}' takes no arguments", line_no, rest_offset + 1)
            flags.add(keyword)
        elif keyword == "base":
            if points is None:
                raise ParseError("'base' before 'points'", line_no, indent + 1)
            tokens = rest.split()
            if len(tokens) != 1:
                raise ParseError("'base' takes exactly one label", line_no, rest_offset + 1)
            if tokens[0] not in points:
                raise UnknownLabel(tokens[0], line_no)
            base = tokens[0]
        else:
            raise ParseError(f"unknown keyword '{keyword}'", line_no, indent + 1)

    if name is None:
        raise ParseError("missing 'space' line", 1)
    if points is None:
        raise ParseError("missing 'points' line", 1)
    return SpaceDocument(
        name=name,
        points=tuple(points),
        connected=canonical_sets(points, connected),
        integral="nonintegral" not in flags,
        generated="raw" not in flags,
        base=base,
    )


def canonical_sets(points: List[str], sets: List[Tuple[str, ...]]) -> Tuple[Tuple[str, ...], ...]:
    """Deduplicated nonempty sets in canonical member order, labels in point order."""
    ground = GroundSet(size=len(points), labels=tuple(points))
    family = SubsetFamily.of(ground.mask_of(labels) for labels in sets)
    return tuple(tuple(ground.label(p) for p in iter_indexes(m)) for m in family.members if m)


def serialize(document: SpaceDocument) -> str:
    """Canonical text of a document."""
    lines = [f"space {document.name}", " ".join(["points", *document.points]).rstrip()]
    if not document.integral:
        lines.append("nonintegral")
    if not document.generated:
        lines.append("raw")
    if document.base is not None:
        lines.append(f"base {document.base}")
    for labels in canonical_sets(list(document.points), list(document.connected)):
        lines.append("connected {" + " ".join(labels) + "}")
    return "\n".join(lines) + "\n"


def to_space(document: SpaceDocument) -> ConnSpace:
    """Build the space a document describes."""
    ground = GroundSet(size=len(document.points), labels=document.points or None)
    masks = [ground.mask_of(labels) for labels in document.connected]
    family = SubsetFamily.of(masks + [0])
    if document.generated:
        return generation_service.generate(ground, family, document.integral)
    return space_service.validate(ground, family, document.integral)


def from_space(space: ConnSpace, name: str, base: Optional[int] = None) -> SpaceDocument:
    """Document listing the irreducible connected sets needed to regenerate the space."""
    minimum = 2 if space.integral else 1
    generators = [m for m in analysis_service.irreducibles(space).members if count_bits(m) >= minimum]
    points = space.ground.label_list()
    return SpaceDocument(
        name=name,
        points=tuple(points),
        connected=tuple(tuple(space.label(p) for p in iter_indexes(m)) for m in generators),
        integral=space.integral,
        generated=True,
        base=space.label(base) if base is not None else None,
    )


def load(path: str) -> SpaceDocument:
    with open(path, "rb") as f:
        raw = f.read()
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as e:
        line = raw[: e.start].count(b"\n") + 1
        column = e.start - (raw.rfind(b"\n", 0, e.start) + 1) + 1
        raise ParseError("file is not valid UTF-8", line, column) from None
    return parse(text)
