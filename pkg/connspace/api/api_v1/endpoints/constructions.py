"""
API endpoints for binary constructions.
"""

import logging

from fastapi import APIRouter, HTTPException
from pydantic import ValidationError

from connspace.api.api_v1.endpoints.spaces import load_document
from connspace.core import space_format
from connspace.core.exceptions import ConnSpaceError
from connspace.models.api import PairRequest, SpaceResponse
from connspace.services.catalog_service import catalog_service
from connspace.services.construction_service import construction_service

logger = logging.getLogger(__name__)

router = APIRouter()

OPERATIONS = {
    "product": construction_service.product,
    "coproduct": construction_service.coproduct,
    "tensor": construction_service.tensor,
    "compose_all": catalog_service.compose_all,
}


@router.post("/{op}", response_model=SpaceResponse)
async def construct(op: str, request: PairRequest):
    """Apply a binary construction to two spaces."""
    if op not in OPERATIONS:
        raise HTTPException(status_code=404, detail=f"unknown construction '{op}'")
    try:
        first_doc, first = load_document(request.first)
        second_doc, second = load_document(request.second)
        result = OPERATIONS[op](first, second)
        document = space_format.from_space(result, f"{op}({first_doc.name},{second_doc.name})")
        return SpaceResponse(success=True, document=space_format.serialize(document))
    except (ConnSpaceError, ValidationError) as e:
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        logger.error(f"Error computing {op}: {e}")
        raise HTTPException(status_code=500, detail=str(e))
