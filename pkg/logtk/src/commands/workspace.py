"""Resolve manifest sections into algebra objects.

Objects are built lazily and cached by name, so two prelog rings over the
same ``[ring.*]`` section share one ``PresentedRing`` and module maps between
them compare their rings by identity.
"""

from __future__ import annotations

import logging
import threading
from typing import Dict, List, Optional, Union

from ..algebra.localalg import PresentedRing
from ..algebra.monoids import FinMonoid, MonoidHom, MonoidIdeal, quotient_by_ideal
from ..algebra.polys import FieldSpec
from ..algebra.prelog import PrelogHom, PrelogRing
from ..utils.config import Settings
from ..utils.errors import IllFormedMap, UnresolvedReference
from ..utils.manifest import Manifest

log = logging.getLogger(__name__)


def effective_settings(base: Settings, manifest: Manifest, flags: Optional[Dict[str, object]] = None) -> Settings:
    """Defaults and environment, then the manifest, then command-line flags."""
    settings = base.merged(manifest.settings)
    if manifest.field is not None:
        settings = settings.merged({"field": manifest.field.name})
    return settings.merged(flags or {})


class Workspace:
    def __init__(self, manifest: Manifest, settings: Settings) -> None:
        self.manifest = manifest
        self.settings = settings
        self._monoids: Dict[str, FinMonoid] = {}
        self._rings: Dict[str, PresentedRing] = {}
        self._prelogs: Dict[str, PrelogRing] = {}
        self._maps: Dict[str, Union[PrelogHom, MonoidHom]] = {}
        # tasks resolve from worker threads
        self._lock = threading.RLock()

    @property
    def field(self) -> FieldSpec:
        return self.settings.field_spec

    def monoid(self, name: str) -> FinMonoid:
        with self._lock:
            if name not in self._monoids:
                section = self._section(self.manifest.monoids, name, "monoid")
                if section.points is not None:
                    M = FinMonoid.affine(section.generators, section.points)
                else:
                    M = FinMonoid.parse(section.generators, section.relations)
                if section.ideal:
                    M = quotient_by_ideal(M, MonoidIdeal(tuple(M.parse_element(e) for e in section.ideal)))
                log.debug("monoid %s: %s", name, M.describe())
                self._monoids[name] = M
            return self._monoids[name]

    def ring(self, name: str) -> PresentedRing:
        with self._lock:
            if name not in self._rings:
                section = self._section(self.manifest.rings, name, "ring")
                order = section.order or self.settings.order
                self._rings[name] = PresentedRing.build(
                    section.variables, self.field, section.relations, section.mode, order
                )
            return self._rings[name]

    def prelog(self, name: str) -> PrelogRing:
        with self._lock:
            if name not in self._prelogs:
                section = self._section(self.manifest.prelogs, name, "prelog")
                M = self.monoid(section.monoid)
                if section.ring is None:
                    if section.alpha:
                        raise IllFormedMap(f"prelog.{name}: alpha given without a ring")
                    P = PrelogRing.of_monoid(M, self.field)
                else:
                    P = PrelogRing.from_names(self.ring(section.ring), M, section.alpha)
                self._prelogs[name] = P
            return self._prelogs[name]

    def prelog_map(self, name: str) -> PrelogHom:
        f = self.map(name)
        if not isinstance(f, PrelogHom):
            raise IllFormedMap(f"map.{name} connects monoids, not prelog rings")
        return f

    def monoid_map(self, name: str) -> MonoidHom:
        f = self.map(name)
        if isinstance(f, PrelogHom):
            return f.monoid_map
        return f

    def map(self, name: str) -> Union[PrelogHom, MonoidHom]:
        with self._lock:
            if name not in self._maps:
                section = self._section(self.manifest.maps, name, "map")
                if self.manifest.map_kind(name) == "prelog":
                    f: Union[PrelogHom, MonoidHom] = PrelogHom.build(
                        self.prelog(section.source), self.prelog(section.target), section.ring, section.monoid
                    )
                else:
                    if section.ring:
                        raise IllFormedMap(f"map.{name}: ring images given for a monoid map")
                    f = MonoidHom.parse(
                        self.monoid(section.source), self.monoid(section.target), section.monoid
                    ).validate()
                self._maps[name] = f
            return self._maps[name]

    def names(self, kind: str) -> List[str]:
        pools = {
            "prelog": self.manifest.prelogs,
            "ring": self.manifest.rings,
            "monoid": self.manifest.monoids,
            "map": self.manifest.maps,
        }
        return list(pools[kind])

    @staticmethod
    def _section(pool: Dict[str, object], name: str, kind: str):
        try:
            return pool[name]
        except KeyError:
            raise UnresolvedReference(name, kind) from None
