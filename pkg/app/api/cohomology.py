from fastapi import APIRouter, HTTPException, status

import app.reports as reports
from app.exceptions import DoubleGroupoidError
from app.ingest.coefficients import coefficients
from app.ingest.double_groupoid import double_groupoid_from_document
from app.logger import logger
from app.schemas.cohomology import CohomologyReport
from app.schemas.requests import CohomologyRequest

app = APIRouter()


@app.post("/total", response_model=CohomologyReport)
def total(request: CohomologyRequest):
    try:
        dg = double_groupoid_from_document(request.double_groupoid)
        action = coefficients(dg, request.bundle)
        return reports.cohomology_report(
            dg, action, request.degree, request.dump_matrices, request.max_cells
        )
    except HTTPException as e:
        raise e
    except DoubleGroupoidError as e:
        raise HTTPException(status_code=e.status_code, detail=e.message)
    except Exception:
        logger.exception("total cohomology failed")
        raise HTTPException(
            status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
            detail="Internal server error",
        )
