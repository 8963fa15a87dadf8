"""Eigenvalue multisets with tolerance-aware clustering."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable

import numpy as np


@dataclass(frozen=True)
class SpectrumMultiset:
    entries: tuple[tuple[float, int], ...]  # sorted by value, gaps > tol
    tol: float

    @classmethod
    def from_values(cls, values: Iterable[float], tol: float) -> "SpectrumMultiset":
        """Sort and merge neighbouring values closer than ``tol``."""
        if tol <= 0:
            raise ValueError("tol must be positive")
        vals = np.sort(np.asarray(list(values), dtype=float))
        entries = []
        start = 0
        for i in range(1, len(vals) + 1):
            if i == len(vals) or vals[i] - vals[i - 1] > tol:
                entries.append((float(vals[start:i].mean()), i - start))
                start = i
        return cls(tuple(entries), tol)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[float, int]], tol: float) -> "SpectrumMultiset":
        values = []
        for value, mult in pairs:
            if mult < 0:
                raise ValueError(f"negative multiplicity {mult} for {value}")
            values.extend([value] * int(mult))
        return cls.from_values(values, tol)

    @property
    def dimension(self) -> int:
        return sum(m for _, m in self.entries)

    def values(self) -> np.ndarray:
        """Eigenvalues expanded by multiplicity, ascending."""
        return np.repeat([v for v, _ in self.entries], [m for _, m in self.entries])

    def multiplicity(self, value: float) -> int:
        return sum(m for v, m in self.entries if abs(v - value) <= self.tol)

    def rounded(self, value: float) -> int | None:
        r = round(value)
        return int(r) if abs(value - r) <= self.tol else None

    def __str__(self) -> str:
        parts = []
        for v, m in self.entries:
            r = self.rounded(v)
            shown = str(r) if r is not None else f"{v:.10g}"
            parts.append(f"{shown}^[{m}]")
        return "{" + ", ".join(parts) + "}"

    def to_records(self) -> list[dict]:
        return [
            {"value": v, "rounded": self.rounded(v), "multiplicity": m}
            for v, m in self.entries
        ]

    @classmethod
    def from_records(cls, records: list[dict], tol: float) -> "SpectrumMultiset":
        # values were canonicalized on the way out; keep them verbatim
        return cls(tuple((float(r["value"]), int(r["multiplicity"])) for r in records), tol)

    def to_json(self) -> str:
        return json.dumps({"tol": self.tol, "eigenvalues": self.to_records()})

    @classmethod
    def from_json(cls, text: str) -> "SpectrumMultiset":
        data = json.loads(text)
        return cls.from_records(data["eigenvalues"], data["tol"])
