"""Manifest files: parsing, validation and normalized printing.

A manifest is a TOML document of ``[kind.name]`` sections, decoded with
:mod:`tomllib` and validated section by section.  Example::

    [field]
    name = "Q"

    [monoid.N2]
    generators = ["a", "b"]

    [ring.A]
    variables = ["s", "t"]

    [prelog.logpoint]
    ring = "A"
    monoid = "N2"
    alpha = { a = "s", b = "t" }

    [task.regular]
    procedure = "log-regular"
    prelog = "logpoint"
"""

from __future__ import annotations

import json
import logging
import re

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from typing import Any, Dict, List, Optional, Tuple, Type

from pydantic import BaseModel, ConfigDict, ValidationError

from .errors import DuplicateName, ManifestError, ManifestSyntaxError, UnresolvedReference

log = logging.getLogger(__name__)

_BARE_KEY = re.compile(r"[A-Za-z0-9_-]+")


# ---------------------------------------------------------------------------
# Section models


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class FieldSection(_Section):
    name: str = "Q"


class MonoidSection(_Section):
    generators: List[str]
    relations: List[str] = []
    points: Optional[List[List[int]]] = None
    ideal: List[str] = []


class RingSection(_Section):
    variables: List[str]
    relations: List[str] = []
    mode: str = "local"
    order: Optional[str] = None


class PrelogSection(_Section):
    monoid: str
    ring: Optional[str] = None
    alpha: Dict[str, str] = {}


class MapSection(_Section):
    source: str
    target: str
    ring: Dict[str, str] = {}
    monoid: Dict[str, str] = {}


class TaskSection(_Section):
    procedure: str
    prelog: Optional[str] = None
    ring: Optional[str] = None
    monoid: Optional[str] = None
    map: Optional[str] = None
    maps: List[str] = []
    ideal: List[str] = []
    elements: List[str] = []
    via: Optional[str] = None
    presentation: Optional[str] = None


SECTION_MODELS: Dict[str, Tuple[str, Type[_Section]]] = {
    "monoid": ("monoids", MonoidSection),
    "ring": ("rings", RingSection),
    "prelog": ("prelogs", PrelogSection),
    "map": ("maps", MapSection),
    "task": ("tasks", TaskSection),
}


class Manifest(BaseModel):
    model_config = ConfigDict(frozen=True)

    field: Optional[FieldSection] = None
    settings: Dict[str, Any] = {}
    monoids: Dict[str, MonoidSection] = {}
    rings: Dict[str, RingSection] = {}
    prelogs: Dict[str, PrelogSection] = {}
    maps: Dict[str, MapSection] = {}
    tasks: Dict[str, TaskSection] = {}

    def map_kind(self, name: str) -> str:
        """``"prelog"`` or ``"monoid"`` depending on what the map connects."""
        section = self.maps[name]
        return "prelog" if section.source in self.prelogs else "monoid"


# ---------------------------------------------------------------------------
# Parsing

_POSITION = re.compile(r"\s*\(at (?:line (\d+), column (\d+)|end of document)\)\s*$")
_HEADER = re.compile(r'^\s*\[\s*([A-Za-z_][\w-]*(?:\s*\.\s*(?:[\w-]+|"[^"]*"))*)\s*\]\s*(?:#.*)?$')
_KEY_LINE = re.compile(r'^\s*"?([^"=\s]+)"?\s*=')


class _Lines:
    """Line lookups in the source text; the TOML decoder keeps no positions for values."""

    def __init__(self, text: str) -> None:
        self.lines = text.splitlines()

    def headers(self) -> List[Tuple[str, int]]:
        out = []
        for number, line in enumerate(self.lines, start=1):
            match = _HEADER.match(line)
            if match:
                out.append((".".join(part.strip().strip('"') for part in match.group(1).split(".")), number))
        return out

    def header_line(self, ident: str) -> int:
        return next((n for h, n in self.headers() if h == ident), 1)

    def key_position(self, ident: Optional[str], key: str) -> Tuple[int, int]:
        start = self.header_line(ident) if ident else 0
        for number in range(start + 1, len(self.lines) + 1):
            line = self.lines[number - 1]
            if _HEADER.match(line):
                break
            match = _KEY_LINE.match(line)
            if match and match.group(1) == key:
                return number, match.start(1) + 1
        return (start or 1), 1

    def section_at(self, line: int) -> Optional[str]:
        current = None
        for ident, number in self.headers():
            if number > line:
                break
            current = ident
        return current

    def char_at(self, line: int, column: int) -> str:
        if line > len(self.lines):
            return "end of file"
        text = self.lines[line - 1]
        return text[column - 1] if column <= len(text) else "end of line"


def _check_duplicate_headers(lines: _Lines) -> None:
    seen = set()
    for ident, _ in lines.headers():
        if ident in seen:
            raise DuplicateName(ident)
        seen.add(ident)


def _decode(text: str, lines: _Lines) -> Dict[str, Any]:
    try:
        return tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        message = str(exc)
        position = _POSITION.search(message)
        if position and position.group(1):
            line, column = int(position.group(1)), int(position.group(2))
        else:
            line, column = len(lines.lines) + 1, 1
        reason = _POSITION.sub("", message)
        if reason.startswith("Cannot overwrite a value") and line <= len(lines.lines):
            key = _KEY_LINE.match(lines.lines[line - 1])
            if key:
                section = lines.section_at(line)
                raise DuplicateName(f"{section}.{key.group(1)}" if section else key.group(1)) from exc
        raise ManifestSyntaxError(line, column, [reason], lines.char_at(line, column)) from exc


def _build_section(model: Type[_Section], ident: str, values: Dict[str, Any], lines: _Lines) -> _Section:
    allowed = list(model.model_fields)
    for k in values:
        if k not in allowed:
            line, column = lines.key_position(ident, k)
            raise ManifestSyntaxError(line, column, allowed, k)
    try:
        return model.model_validate(values)
    except ValidationError as exc:
        err = exc.errors()[0]
        loc = err.get("loc", ())
        key = str(loc[0]) if loc else ""
        line, column = lines.key_position(ident, key) if key in values else (lines.header_line(ident), 1)
        raise ManifestSyntaxError(line, column, [f"{key}: {err.get('msg')}"],
                                  repr(values[key]) if key in values else "") from exc


def parse_manifest(text: str, *, check: bool = True) -> Manifest:
    """Parse manifest text; errors carry the line, column and what was expected there."""
    lines = _Lines(text)
    _check_duplicate_headers(lines)
    doc = _decode(text, lines)
    data: Dict[str, Any] = {attr: {} for attr, _ in SECTION_MODELS.values()}
    count = 0
    for kind, body in doc.items():
        if not isinstance(body, dict):
            line, column = lines.key_position(None, kind)
            raise ManifestSyntaxError(line, column, ["section header"], kind)
        if kind in ("field", "settings"):
            nested = next((k for k, v in body.items() if isinstance(v, dict)), None)
            if nested is not None:
                raise ManifestSyntaxError(lines.header_line(f"{kind}.{nested}"), 1, ["[field]", "[settings]"],
                                          f"[{kind}.{nested}]")
            if kind == "field":
                data["field"] = _build_section(FieldSection, kind, body, lines)
            else:
                data["settings"] = dict(body)
            count += 1
            continue
        if kind not in SECTION_MODELS:
            expected = ["[field]", "[settings]"] + [f"[{k}.<name>]" for k in SECTION_MODELS]
            raise ManifestSyntaxError(lines.header_line(next(iter(_idents(kind, body)))), 1, expected, f"[{kind}]")
        attr, model = SECTION_MODELS[kind]
        if not body:
            raise ManifestSyntaxError(lines.header_line(kind), 1, [f"[{kind}.<name>]"], f"[{kind}]")
        for name, values in body.items():
            if not isinstance(values, dict):
                raise ManifestSyntaxError(lines.header_line(kind), 1, [f"[{kind}.<name>]"], f"[{kind}]")
            data[attr][name] = _build_section(model, f"{kind}.{name}", values, lines)
            count += 1
    manifest = Manifest(**data)
    if check:
        check_references(manifest)
    log.debug("parsed manifest with %d sections", count)
    return manifest


def _idents(kind: str, body: Dict[str, Any]) -> List[str]:
    nested = [f"{kind}.{name}" for name, v in body.items() if isinstance(v, dict)]
    return nested or [kind]


def check_references(m: Manifest) -> None:
    """Every name a section mentions must resolve; ring and monoid names must not be shared by prelogs."""

    def need(name: Optional[str], pool: Dict[str, Any], where: str) -> None:
        if name is not None and name not in pool:
            raise UnresolvedReference(name, where)

    for name, p in m.prelogs.items():
        need(p.monoid, m.monoids, f"prelog.{name}")
        need(p.ring, m.rings, f"prelog.{name}")
    for name, f in m.maps.items():
        pool = m.prelogs if f.source in m.prelogs else m.monoids
        need(f.source, pool, f"map.{name}")
        need(f.target, pool, f"map.{name}")
    for name, t in m.tasks.items():
        where = f"task.{name}"
        need(t.prelog, m.prelogs, where)
        need(t.ring, m.rings, where)
        need(t.monoid, m.monoids, where)
        need(t.map, m.maps, where)
        need(t.presentation, m.maps, where)
        for f in t.maps:
            need(f, m.maps, where)
    shared = set(m.prelogs) & set(m.monoids)
    if shared:
        raise DuplicateName(sorted(shared)[0])


# ---------------------------------------------------------------------------
# Printing


def format_value(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, str):
        return json.dumps(value, ensure_ascii=False)
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(format_value(v) for v in value) + "]"
    if isinstance(value, dict):
        if not value:
            return "{}"
        parts = []
        for k, v in value.items():
            key = k if _BARE_KEY.fullmatch(k) else json.dumps(k)
            parts.append(f"{key} = {format_value(v)}")
        return "{ " + ", ".join(parts) + " }"
    raise ManifestError(f"cannot print value {value!r}")


def print_manifest(m: Manifest) -> str:
    """Normalized text: fixed section order, defaults omitted, one blank line between sections."""
    blocks: List[str] = []

    def block(header: str, values: Dict[str, Any]) -> None:
        lines = [f"[{header}]"] + [f"{k} = {format_value(v)}" for k, v in values.items()]
        blocks.append("\n".join(lines))

    if m.field is not None:
        block("field", m.field.model_dump())
    if m.settings:
        block("settings", dict(m.settings))
    for kind, (attr, _) in SECTION_MODELS.items():
        for name, section in getattr(m, attr).items():
            block(f"{kind}.{name}", section.model_dump(exclude_defaults=True))
    return "\n\n".join(blocks) + "\n"


def normalize(text: str) -> str:
    return print_manifest(parse_manifest(text))
