from typing import Optional

from pydantic import BaseModel, Field

import app.core.config as cfg
from app.schemas.documents import BundleDocument, CoverDocument, DoubleGroupoidDocument


class DoubleGroupoidRequest(BaseModel):
    double_groupoid: DoubleGroupoidDocument


class ValidateRequest(DoubleGroupoidRequest):
    # also require every top-right corner to be filled by a box
    filling: bool = False


class CohomologyRequest(DoubleGroupoidRequest):
    bundle: Optional[BundleDocument] = None
    degree: int = Field(default=1, ge=0)
    dump_matrices: bool = False
    max_cells: int = Field(default=cfg.MAX_CELLS, gt=0)


class ClassifyRequest(DoubleGroupoidRequest):
    bundle: Optional[BundleDocument] = None
    max_cells: int = Field(default=cfg.MAX_CELLS, gt=0)


class CechRequest(DoubleGroupoidRequest):
    bundle: Optional[BundleDocument] = None
    cover: Optional[CoverDocument] = None
