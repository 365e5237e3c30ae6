"""
API v1 router aggregation.
"""

from fastapi import APIRouter

from connspace.api.api_v1.endpoints import catalog, constructions, spaces

api_router = APIRouter()

# Include all endpoint routers
api_router.include_router(spaces.router, prefix="/spaces", tags=["spaces"])
api_router.include_router(catalog.router, prefix="/catalog", tags=["catalog"])
api_router.include_router(constructions.router, prefix="/constructions", tags=["constructions"])
