from fastapi import APIRouter, HTTPException, status

import app.reports as reports
from app.exceptions import DoubleGroupoidError
from app.ingest.double_groupoid import double_groupoid_from_document
from app.logger import logger
from app.schemas.requests import DoubleGroupoidRequest, ValidateRequest
from app.schemas.structure import CoreReport, KernelBundleReport, ValidateResponse

app = APIRouter()


@app.post("/validate", response_model=ValidateResponse)
async def validate(request: ValidateRequest):
    try:
        dg = double_groupoid_from_document(request.double_groupoid)
        report = reports.validate_report(dg, request.filling)
        logger.debug(f"validated {dg.name}: {len(report.report.violations)} violations")
        return report
    except HTTPException as e:
        raise e
    except DoubleGroupoidError as e:
        raise HTTPException(status_code=e.status_code, detail=e.message)
    except Exception:
        logger.exception("validate failed")
        raise HTTPException(
            status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
            detail="Internal server error",
        )


@app.post("/core", response_model=CoreReport)
async def core(request: DoubleGroupoidRequest):
    try:
        return reports.core_report(double_groupoid_from_document(request.double_groupoid))
    except HTTPException as e:
        raise e
    except DoubleGroupoidError as e:
        raise HTTPException(status_code=e.status_code, detail=e.message)
    except Exception:
        logger.exception("core failed")
        raise HTTPException(
            status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
            detail="Internal server error",
        )


@app.post("/kernel-bundle", response_model=KernelBundleReport)
async def kernel_bundle(request: DoubleGroupoidRequest):
    try:
        return reports.kernel_bundle_report(double_groupoid_from_document(request.double_groupoid))
    except HTTPException as e:
        raise e
    except DoubleGroupoidError as e:
        raise HTTPException(status_code=e.status_code, detail=e.message)
    except Exception:
        logger.exception("kernel bundle failed")
        raise HTTPException(
            status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
            detail="Internal server error",
        )
