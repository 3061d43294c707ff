import os

from dotenv import load_dotenv

load_dotenv()

ENV = os.getenv("ENV", "development")
LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO")
PORT = int(os.getenv("PORT", "8000"))

MAX_CELLS = int(os.getenv("MAX_CELLS", "1000000"))
MAX_DEGREE = int(os.getenv("MAX_DEGREE", "4"))
MAX_REFINEMENT_INDICES = int(os.getenv("MAX_REFINEMENT_INDICES", "200000"))
MAX_GROUP_ENUMERATION = int(os.getenv("MAX_GROUP_ENUMERATION", "4096"))
MAX_BRUTE_FORCE = int(os.getenv("MAX_BRUTE_FORCE", "1000000"))
DEFAULT_SEED = int(os.getenv("DEFAULT_SEED", "0"))

SCHEMA_VERSION = 1
