"""
API endpoints for analysing a single space.
"""

import logging
from typing import List, Tuple

from fastapi import APIRouter, HTTPException
from pydantic import ValidationError

from connspace.core import space_format
from connspace.core.bitset import iter_indexes
from connspace.core.dot_renderer import render_generic_graph
from connspace.core.exceptions import ConnSpaceError
from connspace.models.api import (
    GraphResponse,
    InfoResponse,
    IsoResponse,
    PairRequest,
    SpaceRequest,
    StructureResponse,
)
from connspace.models.document import SpaceDocument
from connspace.models.space import ConnSpace
from connspace.services.analysis_service import analysis_service
from connspace.services.space_service import space_service

logger = logging.getLogger(__name__)

router = APIRouter()


def load_document(text: str) -> Tuple[SpaceDocument, ConnSpace]:
    document = space_format.parse(text)
    return document, space_format.to_space(document)


def label_sets(space: ConnSpace, members) -> List[List[str]]:
    return [[space.label(p) for p in iter_indexes(m)] for m in members]


@router.post("/info", response_model=InfoResponse)
async def space_info(request: SpaceRequest):
    """Connectivity invariants of a space."""
    try:
        document, space = load_document(request.document)
        return InfoResponse(success=True, info=analysis_service.space_info(space, document.name))
    except (ConnSpaceError, ValidationError) as e:
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        logger.error(f"Error computing space info: {e}")
        raise HTTPException(status_code=500, detail=str(e))


@router.post("/structure", response_model=StructureResponse)
async def space_structure(request: SpaceRequest):
    """Every connected set of the space, the empty set first."""
    try:
        _, space = load_document(request.document)
        return StructureResponse(success=True, sets=label_sets(space, space.members))
    except (ConnSpaceError, ValidationError) as e:
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        logger.error(f"Error generating structure: {e}")
        raise HTTPException(status_code=500, detail=str(e))


@router.post("/irreducibles", response_model=StructureResponse)
async def space_irreducibles(request: SpaceRequest):
    """Nonempty irreducible connected sets."""
    try:
        _, space = load_document(request.document)
        members = analysis_service.irreducibles(space).members
        return StructureResponse(success=True, sets=label_sets(space, members))
    except (ConnSpaceError, ValidationError) as e:
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        logger.error(f"Error computing irreducibles: {e}")
        raise HTTPException(status_code=500, detail=str(e))


@router.post("/graph", response_model=GraphResponse)
async def space_graph(request: SpaceRequest):
    """Generic graph of the space as DOT text."""
    try:
        document, space = load_document(request.document)
        graph = analysis_service.generic_graph(space)
        return GraphResponse(success=True, dot=render_generic_graph(graph, document.name))
    except (ConnSpaceError, ValidationError) as e:
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        logger.error(f"Error rendering generic graph: {e}")
        raise HTTPException(status_code=500, detail=str(e))


@router.post("/iso", response_model=IsoResponse)
async def space_iso(request: PairRequest):
    """Find an isomorphism between two spaces."""
    try:
        _, first = load_document(request.first)
        _, second = load_document(request.second)
        bijection = space_service.is_isomorphic(first, second)
        if bijection is None:
            return IsoResponse(success=True, isomorphic=False)
        mapping = {first.label(p): second.label(q) for p, q in enumerate(bijection.table)}
        return IsoResponse(success=True, isomorphic=True, bijection=mapping)
    except (ConnSpaceError, ValidationError) as e:
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        logger.error(f"Error searching for an isomorphism: {e}")
        raise HTTPException(status_code=500, detail=str(e))
