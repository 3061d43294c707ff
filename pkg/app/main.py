from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware

import app.api.cech as cech_api
import app.api.cohomology as cohomology_api
import app.api.extensions as extensions_api
import app.api.groupoids as groupoids_api
import app.core.config as cfg
from app.logger import logger

tags_metadata = [
    {
        "name": "Groupoids",
        "description": "_Validate double groupoids, their core and kernel bundle_",
    },
    {
        "name": "Cohomology",
        "description": "_Total cohomology with coefficients in an acted-on bundle_",
    },
    {
        "name": "Extensions",
        "description": "_Classify extensions by an abelian group bundle_",
    },
    {
        "name": "Cech",
        "description": "_Čech cohomology of bisimplicial covers_",
    },
]

app = FastAPI(
    title="double-groupoid-cohomology",
    debug=cfg.ENV == "development",
    openapi_tags=tags_metadata,
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

app.include_router(prefix="/groupoids", router=groupoids_api.app, tags=["Groupoids"])
app.include_router(prefix="/cohomology", router=cohomology_api.app, tags=["Cohomology"])
app.include_router(prefix="/extensions", router=extensions_api.app, tags=["Extensions"])
app.include_router(prefix="/cech", router=cech_api.app, tags=["Cech"])

logger.info("API started (env=%s)", cfg.ENV)
