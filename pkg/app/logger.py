import logging

import app.core.config as cfg

logger = logging.getLogger("dgcohomology")
logger.setLevel(cfg.LOG_LEVEL.upper())

logger.debug("Logger configured (env=%s)", cfg.ENV)
