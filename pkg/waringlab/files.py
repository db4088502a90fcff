import os
import json
import typing
import pathlib
import logging

LOGGER = logging.getLogger(__name__)


def dumps(payload: typing.Any) -> str:
    """Serialize a report or instance; key order is preserved so output is byte-stable."""
    return json.dumps(payload, indent=4)


def read_json(filepath: str) -> typing.Any:
    """Load JSON from a path, raising ValueError with the path on failure."""
    if not os.path.isfile(filepath):
        raise ValueError(f"No such file: {filepath}")
    try:
        return json.loads(pathlib.Path(filepath).read_text(encoding="utf8"))
    except json.JSONDecodeError as exception:
        raise ValueError(f"{filepath} is not valid JSON: {exception}") from exception


def write_json(payload: typing.Any, filepath: str):
    """Write a payload to a JSON file, creating parent directories."""
    dirname = os.path.dirname(filepath)
    if dirname:
        os.makedirs(dirname, exist_ok=True)
    with open(filepath, "w", encoding="utf8") as f:
        f.write(dumps(payload))
    LOGGER.info("Wrote %s.", filepath)
