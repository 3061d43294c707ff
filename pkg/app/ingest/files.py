import json
from pathlib import Path
from typing import Type, TypeVar

from pydantic import BaseModel, ValidationError

import app.core.config as cfg
from app.exceptions import MalformedInputError
from app.logger import logger

Model = TypeVar("Model", bound=BaseModel)


def read_json(path: str | Path) -> dict:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as error:
        raise MalformedInputError(f"cannot read {path}: {error.strerror or error}")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as error:
        raise MalformedInputError(f"{path} is not JSON: {error.msg} at line {error.lineno}")
    if not isinstance(data, dict):
        raise MalformedInputError(f"{path} must hold a JSON object")
    logger.debug("read %s", path)
    return data


def parse_document(model: Type[Model], data: dict, origin: str = "document") -> Model:
    version = data.get("schema")
    if version != cfg.SCHEMA_VERSION:
        raise MalformedInputError(
            f"{origin}: schema version {version!r}, expected {cfg.SCHEMA_VERSION}"
        )
    try:
        return model.model_validate(data)
    except ValidationError as error:
        first = error.errors()[0]
        where = ".".join(str(part) for part in first["loc"])
        raise MalformedInputError(f"{origin}: {where}: {first['msg']}", error.errors())


def load_document(model: Type[Model], path: str | Path) -> Model:
    return parse_document(model, read_json(path), str(path))


def dump_document(document: BaseModel) -> str:
    """Stable JSON text: aliases, fixed indentation and a trailing newline."""
    return document.model_dump_json(indent=2, by_alias=True) + "\n"


def write_document(document: BaseModel, path: str | Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dump_document(document), encoding="utf-8")
    logger.debug("wrote %s", path)
