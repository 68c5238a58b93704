"""Line-delimited UTF-8 JSON records with atomic writes."""

from __future__ import annotations

import json
import os
from collections.abc import Iterable
from pathlib import Path
from typing import Any, TypeVar

from pydantic import BaseModel, ValidationError

from newsdesk_mcp.errors import StateLoadError

M = TypeVar("M", bound=BaseModel)


def dumps(record: BaseModel | dict[str, Any]) -> str:
    if isinstance(record, BaseModel):
        record = record.model_dump(mode="json")
    return json.dumps(record, ensure_ascii=False, separators=(",", ":"))


def write_text(path: str | Path, text: str | bytes) -> None:
    """Write through a temporary sibling and rename over the target."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(f".{path.name}.tmp")
    data = text.encode("utf-8") if isinstance(text, str) else text
    tmp.write_bytes(data)
    os.replace(tmp, path)


def write_jsonl(path: str | Path, records: Iterable[BaseModel | dict[str, Any]]) -> int:
    """One JSON object per line; returns the number of records."""
    lines = [dumps(r) + "\n" for r in records]
    write_text(path, "".join(lines))
    return len(lines)


def read_jsonl(path: str | Path, model: type[M]) -> list[M]:
    """Load every record or fail naming the file and line."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        raise StateLoadError(f"not UTF-8: {e}", str(path)) from e
    except OSError as e:
        raise StateLoadError(f"cannot read: {e}", str(path)) from e
    if text and not text.endswith("\n"):
        raise StateLoadError("truncated record", str(path), text.count("\n") + 1)

    records: list[M] = []
    for number, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            records.append(model.model_validate(json.loads(line)))
        except json.JSONDecodeError as e:
            raise StateLoadError(f"invalid JSON: {e.msg}", str(path), number) from e
        except ValidationError as e:
            raise StateLoadError(f"invalid record: {e.errors()[0]['msg']}", str(path), number) from e
    return records
