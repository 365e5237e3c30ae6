"""
Service for irreducibility, generic graphs and the connectivity index.
"""

import logging
from typing import Dict, Hashable, List, Optional, Tuple, Union

import networkx as nx

from connspace.core.bitset import is_proper_subset, singleton
from connspace.core.exceptions import (
    NoIndexForEmptySpace,
    NotConnected,
    NotIntegral,
    NotIrreducible,
    NotRealizable,
)
from connspace.models.graph import GenericGraph, GraphReport, IndexReport, SpaceInfo
from connspace.models.space import ConnSpace, GroundSet, SubsetFamily
from connspace.services.generation_service import generation_service
from connspace.services.space_service import space_service

logger = logging.getLogger(__name__)


class AnalysisService:
    """Service for the generic-graph analysis of finite connectivity spaces."""

    def __init__(self):
        self.logger = logger

    # ===========================================
    # IRREDUCIBILITY
    # ===========================================

    def is_reducible(self, space: ConnSpace, subset: int) -> bool:
        """True iff subset is the union of two overlapping proper connected subsets."""
        if not subset or subset not in space:
            raise NotConnected(f"{space.describe(subset)} is not a nonempty connected subset")
        parts = [m for m in space.members if m and is_proper_subset(m, subset)]
        for i, first in enumerate(parts):
            for second in parts[i + 1:]:
                if first & second and first | second == subset:
                    return True
        return False

    def irreducibles(self, space: ConnSpace) -> SubsetFamily:
        """All nonempty irreducible connected subsets."""
        return SubsetFamily.of(m for m in space.members if m and not self.is_reducible(space, m))

    def is_distinguished(self, space: ConnSpace) -> bool:
        return all(not self.is_reducible(space, m) for m in space.members if m)

    def is_irreducible_space(self, space: ConnSpace) -> bool:
        if not space_service.is_connected_space(space):
            return False
        return not self.is_reducible(space, space.carrier)

    def is_connected_space(self, space: ConnSpace) -> bool:
        return space_service.is_connected_space(space)

    def brunnian_closure(self, space: ConnSpace) -> ConnSpace:
        """Add the whole carrier to the structure."""
        members = space.structure.as_set() | {space.carrier}
        return ConnSpace(ground=space.ground, structure=SubsetFamily.of(members), integral=space.integral)

    def remove_carrier(self, space: ConnSpace) -> ConnSpace:
        """Drop the whole carrier from the structure of a nonempty irreducible space."""
        if not self.is_irreducible_space(space):
            raise NotIrreducible("remove_carrier requires a nonempty irreducible space")
        if space.size == 1 and space.integral:
            raise NotIrreducible("the carrier of a one-point integral space is a required singleton")
        members = space.structure.as_set() - {space.carrier}
        return ConnSpace(ground=space.ground, structure=SubsetFamily.of(members), integral=space.integral)

    # ===========================================
    # GENERIC GRAPH
    # ===========================================

    def generic_graph(self, space: ConnSpace) -> GenericGraph:
        """Covering DAG of the generic points, edges from a set to the sets it covers."""
        if not space.integral:
            raise NotIntegral("generic_graph")
        vertices = self.irreducibles(space).members
        containment = nx.DiGraph()
        containment.add_nodes_from(range(len(vertices)))
        for i, outer in enumerate(vertices):
            for j, inner in enumerate(vertices):
                if is_proper_subset(inner, outer):
                    containment.add_edge(i, j)
        reduced = nx.transitive_reduction(containment)
        edges = tuple(sorted(reduced.edges()))
        self.logger.debug(f"Generic graph: {len(vertices)} vertices, {len(edges)} edges")
        return GenericGraph(ground=space.ground, vertices=vertices, edges=edges)

    def heights(self, graph: nx.DiGraph) -> Dict[Hashable, int]:
        """Longest path from every vertex down to a sink."""
        heights: Dict[Hashable, int] = {}
        for vertex in reversed(list(nx.topological_sort(graph))):
            below = [heights[successor] for successor in graph.successors(vertex)]
            heights[vertex] = 1 + max(below) if below else 0
        return heights

    def index(self, space: ConnSpace) -> IndexReport:
        """Connectivity index: the maximal sink-height in the generic graph."""
        if not space.integral:
            raise NotIntegral("index")
        if space.size == 0:
            raise NoIndexForEmptySpace()
        graph = self.generic_graph(space)
        heights = self.heights(graph.to_networkx())
        return IndexReport(space_index=max(heights.values()), per_vertex_heights=dict(heights))

    def space_from_generic_graph(self, graph: Union[GenericGraph, nx.DiGraph]) -> ConnSpace:
        """Rebuild the integral space whose generic graph is the given DAG."""
        if isinstance(graph, GenericGraph):
            dag = graph.to_networkx()
            nodes: List[Hashable] = list(range(len(graph.vertices)))
        else:
            dag = graph
            nodes = list(graph.nodes())
        if not nx.is_directed_acyclic_graph(dag):
            raise NotRealizable("graph has a directed cycle", witness=nx.find_cycle(dag))

        sinks = [node for node in nodes if dag.out_degree(node) == 0]
        point_of = {sink: point for point, sink in enumerate(sinks)}
        generators = []
        for node in nodes:
            reach = nx.descendants(dag, node) | {node}
            mask = 0
            for sink in reach:
                if sink in point_of:
                    mask |= singleton(point_of[sink])
            generators.append(mask)

        ground = GroundSet(size=len(sinks), labels=self._sink_labels(graph, sinks))
        space = generation_service.generate(ground, SubsetFamily.of(generators), integral=True)

        rebuilt = self.generic_graph(space).to_networkx()
        if not nx.is_isomorphic(rebuilt, dag):
            witness = (
                (dag.number_of_nodes(), dag.number_of_edges()),
                (rebuilt.number_of_nodes(), rebuilt.number_of_edges()),
            )
            self.logger.info(f"Reconstruction mismatch (given, rebuilt) = {witness}")
            raise NotRealizable(
                f"the reconstructed space has a generic graph with {witness[1][0]} vertices "
                f"and {witness[1][1]} edges, not {witness[0][0]} and {witness[0][1]}",
                witness=witness,
            )
        return space

    def _sink_labels(self, graph: Union[GenericGraph, nx.DiGraph], sinks: List[Hashable]) -> Optional[Tuple[str, ...]]:
        if isinstance(graph, GenericGraph):
            labels = [graph.ground.describe(graph.vertices[sink])[1:-1] for sink in sinks]
        else:
            labels = [str(sink) for sink in sinks]
        if len(set(labels)) != len(labels) or any(not label or " " in label for label in labels):
            return None
        return tuple(labels)

    # ===========================================
    # REPORTS
    # ===========================================

    def find_collider(self, graph: nx.DiGraph) -> Optional[Tuple[int, int, int]]:
        """First triple a -> b <- c with a != c."""
        for vertex in sorted(graph.nodes()):
            parents = sorted(graph.predecessors(vertex))
            if len(parents) >= 2:
                return parents[0], vertex, parents[1]
        return None

    def graph_report(self, space: ConnSpace) -> GraphReport:
        """Generic-graph characterisations next to the space-level predicates."""
        if not space.integral:
            raise NotIntegral("graph_report")
        dag = self.generic_graph(space).to_networkx()
        collider = self.find_collider(dag)
        nonempty = dag.number_of_nodes() > 0
        return GraphReport(
            graph_connected=nonempty and nx.is_weakly_connected(dag),
            graph_components=nx.number_weakly_connected_components(dag) if nonempty else 0,
            sources=sum(1 for node in dag.nodes() if dag.in_degree(node) == 0),
            has_collider=collider is not None,
            collider=collider,
            is_directed_tree=nonempty and nx.is_arborescence(dag),
            space_connected=space_service.is_connected_space(space),
            space_components=len(space_service.connected_components(space).blocks),
            space_irreducible=self.is_irreducible_space(space),
            space_distinguished=self.is_distinguished(space),
        )

    def space_info(self, space: ConnSpace, name: Optional[str] = None) -> SpaceInfo:
        """Summary of the invariants printed by `info`."""
        components = None
        space_index = None
        if space.integral:
            components = len(space_service.connected_components(space).blocks)
            if space.size > 0:
                space_index = self.index(space).space_index
        return SpaceInfo(
            name=name,
            points=space.size,
            connected=space_service.is_connected_space(space),
            components=components,
            irreducible=self.is_irreducible_space(space),
            distinguished=self.is_distinguished(space),
            index=space_index,
        )


# Global service instance
analysis_service = AnalysisService()
