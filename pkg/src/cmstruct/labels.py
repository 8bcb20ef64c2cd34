"""Structure labels for the three concept-map shapes."""

from __future__ import annotations

import enum


class StructureLabel(enum.IntEnum):
    """Alphabetical, zero-based encoding; stable across the toolkit."""

    CHAIN = 0
    NETWORK = 1
    SPOKE = 2

    @property
    def wire_name(self) -> str:
        """Lowercase name used in files and on the wire."""
        return self.name.lower()

    @classmethod
    def from_name(cls, name: str) -> "StructureLabel":
        try:
            return cls[name.strip().upper()]
        except KeyError:
            raise ValueError(f"unknown structure label: {name!r}") from None


LABELS: tuple[StructureLabel, ...] = tuple(StructureLabel)
CLASS_NAMES: tuple[str, ...] = tuple(lbl.wire_name for lbl in LABELS)
