"""
Pydantic model for the line-oriented space document format.
"""

from typing import Optional, Tuple

from pydantic import BaseModel, ConfigDict, model_validator


class SpaceDocument(BaseModel):
    """A named space as written in a .space file."""

    model_config = ConfigDict(frozen=True)

    name: str
    points: Tuple[str, ...] = ()
    connected: Tuple[Tuple[str, ...], ...] = ()
    integral: bool = True
    generated: bool = True
    base: Optional[str] = None

    @model_validator(mode="after")
    def _check_labels(self) -> "SpaceDocument":
        if len(set(self.points)) != len(self.points):
            raise ValueError("point labels must be pairwise distinct")
        known = set(self.points)
        for subset in self.connected:
            for label in subset:
                if label not in known:
                    raise ValueError(f"unknown point label '{label}'")
        if self.base is not None and self.base not in known:
            raise ValueError(f"unknown base point '{self.base}'")
        return self
