"""
Pydantic models for generic graphs and the reports derived from them.
"""

from typing import Dict, List, Optional, Tuple

import networkx as nx
from pydantic import BaseModel, ConfigDict, model_validator

from connspace.core.bitset import is_proper_subset
from connspace.models.space import GroundSet


class GenericGraph(BaseModel):
    """DAG of the nonempty irreducible connected sets, edges along covering containment."""

    model_config = ConfigDict(frozen=True)

    ground: GroundSet
    vertices: Tuple[int, ...]
    edges: Tuple[Tuple[int, int], ...]

    @model_validator(mode="after")
    def _check_edges(self) -> "GenericGraph":
        count = len(self.vertices)
        for source, target in self.edges:
            if not (0 <= source < count and 0 <= target < count):
                raise ValueError(f"edge ({source}, {target}) refers to a missing vertex")
            if not is_proper_subset(self.vertices[target], self.vertices[source]):
                raise ValueError(f"edge ({source}, {target}) does not go to a proper subset")
        return self

    def to_networkx(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(range(len(self.vertices)))
        graph.add_edges_from(self.edges)
        return graph

    def sinks(self) -> List[int]:
        has_out = {source for source, _ in self.edges}
        return [v for v in range(len(self.vertices)) if v not in has_out]

    def sources(self) -> List[int]:
        has_in = {target for _, target in self.edges}
        return [v for v in range(len(self.vertices)) if v not in has_in]


class IndexReport(BaseModel):
    """Height of every generic point and the connectivity index of the space."""

    model_config = ConfigDict(frozen=True)

    space_index: int
    per_vertex_heights: Dict[int, int]


class GraphReport(BaseModel):
    """Generic-graph facts next to the space-level predicates they characterise."""

    model_config = ConfigDict(frozen=True)

    graph_connected: bool
    graph_components: int
    sources: int
    has_collider: bool
    collider: Optional[Tuple[int, int, int]] = None
    is_directed_tree: bool

    space_connected: bool
    space_components: int
    space_irreducible: bool
    space_distinguished: bool

    @property
    def consistent(self) -> bool:
        return (
            self.graph_connected == self.space_connected
            and self.graph_components == self.space_components
            and (self.sources == 1) == self.space_irreducible
            and (not self.has_collider) == self.space_distinguished
            and self.is_directed_tree == (self.space_connected and self.space_distinguished)
        )


class SpaceInfo(BaseModel):
    """Summary printed by the `info` command."""

    name: Optional[str] = None
    points: int
    connected: bool
    components: Optional[int] = None
    irreducible: bool
    distinguished: bool
    index: Optional[int] = None
