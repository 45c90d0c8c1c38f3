"""Run settings.

Settings are resolved from four layers, later layers winning:

1. built-in defaults,
2. ``LOGTK_*`` environment variables (a ``.env`` file is honoured through
   ``python-dotenv``),
3. the ``[field]`` and ``[settings]`` sections of a manifest,
4. command-line flags.
"""

from __future__ import annotations

import logging
import os
from typing import Any, Dict, Mapping, Optional

from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from ..algebra.groebner import ORDER_NAMES
from ..algebra.polys import FieldSpec
from .errors import ManifestError

log = logging.getLogger(__name__)

ENV_PREFIX = "LOGTK_"
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")


class Settings(BaseModel):
    model_config = ConfigDict(frozen=True)

    field: str = "Q"
    degree_bound: int = Field(default=8, ge=0)
    hilbert_budget: int = Field(default=10_000, gt=0)
    class_budget: int = Field(default=5_000, gt=0)
    order: str = "degrevlex"
    json_output: bool = False
    log_level: str = "WARNING"
    archive: Optional[str] = None

    @field_validator("field")
    @classmethod
    def _known_field(cls, value: str) -> str:
        FieldSpec.parse(value)
        return value

    @field_validator("order")
    @classmethod
    def _known_order(cls, value: str) -> str:
        if value not in ORDER_NAMES:
            raise ValueError(f"unknown term order {value!r}; expected one of {', '.join(ORDER_NAMES)}")
        return value

    @field_validator("log_level")
    @classmethod
    def _known_level(cls, value: str) -> str:
        value = value.upper()
        if value not in LOG_LEVELS:
            raise ValueError(f"unknown log level {value!r}")
        return value

    @property
    def field_spec(self) -> FieldSpec:
        return FieldSpec.parse(self.field)

    def merged(self, values: Mapping[str, Any]) -> "Settings":
        """Return a copy with ``values`` (``None`` entries skipped) applied on top."""
        updates = {k: v for k, v in values.items() if v is not None}
        if not updates:
            return self
        unknown = set(updates) - set(type(self).model_fields)
        if unknown:
            raise ManifestError(f"unknown setting(s): {', '.join(sorted(unknown))}")
        try:
            return type(self).model_validate({**self.model_dump(), **updates})
        except ValidationError as exc:
            raise ManifestError(_first_error(exc)) from exc


def _first_error(exc: ValidationError) -> str:
    err = exc.errors()[0]
    where = ".".join(str(p) for p in err.get("loc", ()))
    return f"invalid setting {where}: {err.get('msg')}"


def _from_env(env: Mapping[str, str]) -> Dict[str, Any]:
    out: Dict[str, Any] = {}
    for name in Settings.model_fields:
        raw = env.get(ENV_PREFIX + name.upper())
        if raw is None or raw == "":
            continue
        out[name] = raw
    if "json_output" in out:
        out["json_output"] = str(out["json_output"]).lower() in ("1", "true", "yes", "on")
    return out


def load_settings(env: Optional[Mapping[str, str]] = None, *, dotenv: bool = True) -> Settings:
    """Defaults overlaid with the environment."""
    if env is None:
        if dotenv:
            load_dotenv()
        env = os.environ
    settings = Settings().merged(_from_env(env))
    log.debug("settings: %s", settings.model_dump())
    return settings
