"""Service configuration.

Values come, in increasing priority, from built-in defaults, an optional
JSON config file, environment variables named after the upper-cased
field (``SIMILARITY_THRESHOLD``, ``DATA_DIR``, ...), and finally any
explicit overrides the caller passes (typically CLI flags).
"""

from __future__ import annotations

import dataclasses
import json
import os
from dataclasses import dataclass
from typing import Optional


@dataclass(slots=True)
class Config:
    data_dir: str = "./storygraph-data"
    host: str = "127.0.0.1"
    port: int = 8000
    strict_format: bool = True
    similarity_threshold: float = 0.4
    top_n: int = 5
    max_depth: int = 2
    embedding_provider: str = "builtin"
    provider_url: Optional[str] = None
    glossary_path: Optional[str] = None
    snapshot_every: int = 100

    def __post_init__(self):
        if not 0.0 < self.similarity_threshold < 1.0:
            raise ValueError("similarity_threshold must lie in (0, 1)")
        if self.top_n < 1:
            raise ValueError("top_n must be at least 1")
        if self.max_depth < 1:
            raise ValueError("max_depth must be at least 1")
        if self.embedding_provider not in ("builtin", "remote"):
            raise ValueError("embedding_provider must be 'builtin' or 'remote'")
        if self.embedding_provider == "remote" and not self.provider_url:
            raise ValueError("remote embedding_provider needs provider_url")

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)


_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}


def _coerce(field: dataclasses.Field, raw):
    if raw is None:
        return None
    text = str(raw)
    if field.type in ("int", int):
        return int(text)
    if field.type in ("float", float):
        return float(text)
    if field.type in ("bool", bool):
        lowered = text.strip().lower()
        if lowered in _TRUE:
            return True
        if lowered in _FALSE:
            return False
        raise ValueError(f"{field.name}: cannot read {raw!r} as a boolean")
    return text


def load_config(
    path: Optional[str] = None,
    env: Optional[dict] = None,
    overrides: Optional[dict] = None,
) -> Config:
    values: dict = {}
    fields = {f.name: f for f in dataclasses.fields(Config)}

    if path:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        if not isinstance(data, dict):
            raise ValueError(f"config file {path!r} must hold a JSON object")
        for key, value in data.items():
            if key not in fields:
                raise ValueError(f"unknown config key {key!r}")
            values[key] = value

    env = os.environ if env is None else env
    for name, field in fields.items():
        raw = env.get(name.upper())
        if raw is not None:
            values[name] = _coerce(field, raw)

    for key, value in (overrides or {}).items():
        if value is None:
            continue
        if key not in fields:
            raise ValueError(f"unknown config key {key!r}")
        values[key] = value

    return Config(**values)
