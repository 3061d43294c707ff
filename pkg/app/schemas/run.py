from pathlib import Path
from typing import List, Optional

from pydantic import BaseModel, Field, field_validator

import app.core.config as cfg
from app.models import Command, OutputFormat


class RunConfig(BaseModel):
    """One invocation of the command line, with the caps it runs under."""

    command: Command
    inputs: List[Path] = []
    bundle: Optional[Path] = None
    cover: Optional[Path] = None
    output: Optional[Path] = None
    degree: int = Field(default=1, ge=0)
    max_cells: int = Field(default=cfg.MAX_CELLS, gt=0)
    max_degree: int = Field(default=cfg.MAX_DEGREE, gt=0)
    max_refinement_indices: int = Field(default=cfg.MAX_REFINEMENT_INDICES, gt=0)
    max_group_enumeration: int = Field(default=cfg.MAX_GROUP_ENUMERATION, gt=0)
    seed: int = cfg.DEFAULT_SEED
    filling: bool = False
    glue: bool = False
    format: OutputFormat = OutputFormat.TEXT

    @field_validator("inputs")
    @classmethod
    def inputs_exist(cls, paths: List[Path]) -> List[Path]:
        missing = [str(path) for path in paths if not path.exists()]
        if missing:
            raise ValueError(f"no such file: {', '.join(missing)}")
        return paths
