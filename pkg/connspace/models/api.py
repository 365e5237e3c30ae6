"""
Pydantic request and response models for the HTTP API.
"""

from typing import Dict, List, Optional

from pydantic import BaseModel

from connspace.models.graph import SpaceInfo


class SpaceRequest(BaseModel):
    """A space in the .space text format."""

    document: str


class PairRequest(BaseModel):
    """Two spaces in the .space text format."""

    first: str
    second: str


class SpaceResponse(BaseModel):
    """A resulting space, serialised canonically."""

    success: bool
    document: str


class InfoResponse(BaseModel):
    success: bool
    info: SpaceInfo


class StructureResponse(BaseModel):
    """Connected sets as lists of point labels, in canonical order."""

    success: bool
    sets: List[List[str]]


class GraphResponse(BaseModel):
    success: bool
    dot: str


class IsoResponse(BaseModel):
    success: bool
    isomorphic: bool
    bijection: Optional[Dict[str, str]] = None
