from fastapi import APIRouter, HTTPException, status

import app.reports as reports
from app.exceptions import DoubleGroupoidError
from app.ingest.coefficients import coefficients
from app.ingest.covers import bisimplicial_from_document
from app.ingest.double_groupoid import double_groupoid_from_document
from app.logger import logger
from app.schemas.cech import CechReport
from app.schemas.requests import CechRequest

app = APIRouter()


@app.post("/h1", response_model=CechReport)
def h1(request: CechRequest):
    """Over the finest cover when no cover is sent."""
    try:
        dg = double_groupoid_from_document(request.double_groupoid)
        action = coefficients(dg, request.bundle)
        if request.cover is None:
            return reports.cech_report(dg, action)
        cover = bisimplicial_from_document(request.cover, dg)
        return reports.cech_report(dg, action, cover, compare=False)
    except HTTPException as e:
        raise e
    except DoubleGroupoidError as e:
        raise HTTPException(status_code=e.status_code, detail=e.message)
    except Exception:
        logger.exception("Čech cohomology failed")
        raise HTTPException(
            status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
            detail="Internal server error",
        )
