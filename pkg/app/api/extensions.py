from fastapi import APIRouter, HTTPException, status

import app.reports as reports
from app.exceptions import DoubleGroupoidError
from app.ingest.coefficients import coefficients
from app.ingest.double_groupoid import double_groupoid_from_document
from app.logger import logger
from app.schemas.extensions import ClassificationReport
from app.schemas.requests import ClassifyRequest

app = APIRouter()


@app.post("/classify", response_model=ClassificationReport)
def classify(request: ClassifyRequest):
    try:
        dg = double_groupoid_from_document(request.double_groupoid)
        action = coefficients(dg, request.bundle)
        return reports.classification_report(dg, action, max_cells=request.max_cells)
    except HTTPException as e:
        raise e
    except DoubleGroupoidError as e:
        raise HTTPException(status_code=e.status_code, detail=e.message)
    except Exception:
        logger.exception("classification failed")
        raise HTTPException(
            status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
            detail="Internal server error",
        )
