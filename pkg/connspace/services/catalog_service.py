"""
Service for the standard spaces, Brunnian compositions and exhaustive enumeration.
"""

import itertools
import logging
from typing import Dict, Iterable, Iterator, List, Sequence, Tuple

import networkx as nx

from connspace.config import get_settings
from connspace.core.bitset import count_bits, full_mask, iter_indexes, iter_submasks, make_bitset, singleton
from connspace.core.exceptions import (
    InvalidEdge,
    InvalidParameter,
    InvalidPoint,
    InvalidTopology,
    NotIrreducible,
    SizeLimitExceeded,
)
from connspace.core.labels import distinct_or_none, is_labeled, pair_labels
from connspace.models.space import ConnSpace, GroundSet, SubsetFamily
from connspace.services.analysis_service import analysis_service
from connspace.services.construction_service import box_mask
from connspace.services.generation_service import generation_service
from connspace.services.space_service import space_service

logger = logging.getLogger(__name__)


class CatalogService:
    """Service building named families of connectivity spaces."""

    def __init__(self):
        self.logger = logger

    # ===========================================
    # STANDARD SPACES
    # ===========================================

    def discrete(self, n: int, integral: bool = True) -> ConnSpace:
        members = [0]
        if integral:
            members += [singleton(p) for p in range(n)]
        return ConnSpace(ground=GroundSet(size=n), structure=SubsetFamily.of(members), integral=integral)

    def indiscrete(self, n: int) -> ConnSpace:
        space_service.check_carrier(n)
        return space_service.build(GroundSet(size=n), iter_submasks(full_mask(n)), integral=True)

    def brunnian(self, n: int) -> ConnSpace:
        """B_n: the whole carrier is the only connected set with two or more points."""
        self._require_points(n, "brunnian")
        return analysis_service.brunnian_closure(self.discrete(n))

    def v_space(self, n: int) -> ConnSpace:
        """V_n: connected sets are the initial segments {0..k-1}."""
        self._require_points(n, "v_space")
        members = [full_mask(k) for k in range(2, n + 1)]
        return ConnSpace(
            ground=GroundSet(size=n),
            structure=SubsetFamily.of(self.discrete(n).members + tuple(members)),
            integral=True,
        )

    def order_space(self, n: int) -> ConnSpace:
        """Intervals {a..b} of the chain 0 < 1 < ... < n-1."""
        intervals = [full_mask(b + 1) & ~full_mask(a) for a in range(n) for b in range(a, n)]
        return space_service.build(GroundSet(size=n), [0] + intervals, integral=True)

    def threshold_space(self, n: int, nu: int) -> ConnSpace:
        """Non-trivial connected sets are the subsets with more than nu points."""
        if nu < 1:
            raise InvalidParameter(f"threshold must be at least 1, got {nu}")
        space_service.check_carrier(n)
        members = [m for m in iter_submasks(full_mask(n)) if count_bits(m) > nu or count_bits(m) <= 1]
        return space_service.build(GroundSet(size=n), members, integral=True)

    def from_graph(self, n: int, edges: Iterable[Tuple[int, int]]) -> ConnSpace:
        """Integral space of the path-connected vertex sets of a simple graph."""
        generators = []
        for a, b in edges:
            if not (0 <= a < n and 0 <= b < n):
                raise InvalidEdge(f"edge ({a}, {b}) has an endpoint outside 0..{n - 1}")
            if a == b:
                raise InvalidEdge(f"edge ({a}, {b}) is a loop")
            generators.append(singleton(a) | singleton(b))
        return generation_service.generate(GroundSet(size=n), SubsetFamily.of(generators), integral=True)

    def poset_space(self, n: int, relations: Iterable[Tuple[int, int]]) -> ConnSpace:
        """Integral space generated by the closed intervals of a partial order."""
        order = nx.DiGraph()
        order.add_nodes_from(range(n))
        for a, b in relations:
            if not (0 <= a < n and 0 <= b < n):
                raise InvalidEdge(f"relation ({a}, {b}) has an element outside 0..{n - 1}")
            if a != b:
                order.add_edge(a, b)
        if not nx.is_directed_acyclic_graph(order):
            raise InvalidEdge(f"relations contain the cycle {nx.find_cycle(order)}")
        above = {a: nx.descendants(order, a) | {a} for a in range(n)}
        below = {b: nx.ancestors(order, b) | {b} for b in range(n)}
        intervals = [
            make_bitset(above[a] & below[b]) for a in range(n) for b in above[a]
        ]
        return generation_service.generate(GroundSet(size=n), SubsetFamily.of(intervals), integral=True)

    def topology_space(self, n: int, open_sets: Iterable[int]) -> ConnSpace:
        """Integral space of the subsets that are connected in a finite topology."""
        space_service.check_carrier(n)
        whole = full_mask(n)
        opens = {0, whole} | set(open_sets)
        for u in opens:
            if not 0 <= u <= whole:
                raise InvalidTopology(f"open set {u:#b} does not fit a ground set of {n} points")
        for u, v in itertools.combinations(opens, 2):
            if u | v not in opens or u & v not in opens:
                raise InvalidTopology(f"open sets {u:#b} and {v:#b} break closure under union or intersection")
        members = []
        for subset in iter_submasks(whole):
            relative = {u & subset for u in opens}
            split = any(part and part != subset and subset & ~part in relative for part in relative)
            if not split:
                members.append(subset)
        self.logger.debug(f"Topology with {len(opens)} open sets has {len(members)} connected sets")
        return space_service.build(GroundSet(size=n), members, integral=True)

    def _require_points(self, n: int, name: str) -> None:
        if n < 1:
            raise InvalidParameter(f"{name} needs at least one point, got {n}")

    # ===========================================
    # BRUNNIAN COMPOSITIONS
    # ===========================================

    def _require_composable(self, x: ConnSpace, y: ConnSpace) -> None:
        for space in (x, y):
            if not space.integral or space.size == 0:
                raise NotIrreducible("compositions need nonempty integral spaces")
        if not analysis_service.is_irreducible_space(y):
            raise NotIrreducible("the inserted space must be irreducible")

    def compose_at(self, x: ConnSpace, point: int, y: ConnSpace) -> ConnSpace:
        """Replace the sink {point} of the generic graph of x by a copy of that of y."""
        self._require_composable(x, y)
        if not 0 <= point < x.size:
            raise InvalidPoint(f"{point} is not a point of a {x.size}-point space")

        kept = [p for p in range(x.size) if p != point]
        position = {p: i for i, p in enumerate(kept)}
        offset = len(kept)
        copy = full_mask(y.size) << offset

        def reindex(mask: int) -> int:
            return make_bitset(position[p] for p in iter_indexes(mask) if p != point)

        generators = [m << offset for m in analysis_service.irreducibles(y).members]
        for member in analysis_service.irreducibles(x).members:
            if member >> point & 1:
                generators.append(reindex(member) | copy)
            else:
                generators.append(reindex(member))

        labels = None
        if is_labeled(x.ground, y.ground):
            labels = distinct_or_none(
                [x.label(p) for p in kept] + [f"{x.label(point)}.{y.label(q)}" for q in range(y.size)]
            )
        ground = GroundSet(size=offset + y.size, labels=labels)
        return generation_service.generate(ground, SubsetFamily.of(generators), integral=True)

    def compose_all(self, x: ConnSpace, y: ConnSpace) -> ConnSpace:
        """Replace every sink of the generic graph of x by a copy of that of y."""
        self._require_composable(x, y)
        whole = full_mask(y.size)
        generators = [
            box_mask(singleton(p), inner, y.size)
            for p in range(x.size)
            for inner in analysis_service.irreducibles(y).members
        ]
        generators += [box_mask(outer, whole, y.size) for outer in analysis_service.irreducibles(x).members]
        size = x.size * y.size
        space_service.check_carrier(size, "composition carrier")
        ground = GroundSet(size=size, labels=pair_labels(x.ground, y.ground))
        return generation_service.generate(ground, SubsetFamily.of(generators), integral=True)

    # ===========================================
    # ENUMERATION
    # ===========================================

    def enumerate_spaces(self, n: int, integral: bool = True) -> Iterator[ConnSpace]:
        """Every valid structure on n points, in order of the chosen-subset bitmask."""
        limit = get_settings().max_enumeration_carrier
        if n > limit:
            raise SizeLimitExceeded("enumeration carrier", n, limit)
        minimum = 2 if integral else 1
        candidates = [m for m in range(1, full_mask(n) + 1) if count_bits(m) >= minimum]
        base = [0] + ([singleton(p) for p in range(n)] if integral else [])
        ground = GroundSet(size=n)
        for choice in range(1 << len(candidates)):
            chosen = [candidates[i] for i in iter_indexes(choice)]
            if self._closed(chosen):
                yield ConnSpace(ground=ground, structure=SubsetFamily.of(base + chosen), integral=integral)

    def _closed(self, chosen: Sequence[int]) -> bool:
        present = set(chosen)
        for i, first in enumerate(chosen):
            for second in chosen[i + 1:]:
                if first & second and (first | second) not in present:
                    return False
        return True

    def enumerate_classes(self, n: int, integral: bool = True) -> List[ConnSpace]:
        """One canonical representative per isomorphism class."""
        classes: Dict[SubsetFamily, ConnSpace] = {}
        for space in self.enumerate_spaces(n, integral):
            canonical = space_service.canonical_form(space)
            classes.setdefault(canonical.structure, canonical)
        self.logger.debug(f"{len(classes)} isomorphism classes on {n} points")
        return list(classes.values())

    def by_name(self, name: str, n: int) -> ConnSpace:
        """Catalog lookup used by the command line and the HTTP surface."""
        builders = {
            "discrete": self.discrete,
            "indiscrete": self.indiscrete,
            "brunnian": self.brunnian,
            "v": self.v_space,
            "order": self.order_space,
        }
        if name not in builders:
            raise KeyError(name)
        return builders[name](n)


# Global service instance
catalog_service = CatalogService()
