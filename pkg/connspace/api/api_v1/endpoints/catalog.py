"""
API endpoints for the standard spaces.
"""

import logging

from fastapi import APIRouter, HTTPException

from connspace.core import space_format
from connspace.core.exceptions import ConnSpaceError
from connspace.models.api import SpaceResponse
from connspace.services.catalog_service import catalog_service

logger = logging.getLogger(__name__)

router = APIRouter()


@router.get("/{name}/{n}", response_model=SpaceResponse)
async def get_catalog_space(name: str, n: int):
    """A standard space: discrete, indiscrete, brunnian, v or order."""
    try:
        space = catalog_service.by_name(name, n)
        document = space_format.from_space(space, f"{name}{n}")
        return SpaceResponse(success=True, document=space_format.serialize(document))
    except KeyError:
        raise HTTPException(status_code=404, detail=f"unknown catalog space '{name}'")
    except ConnSpaceError as e:
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        logger.error(f"Error building catalog space {name}{n}: {e}")
        raise HTTPException(status_code=500, detail=str(e))
