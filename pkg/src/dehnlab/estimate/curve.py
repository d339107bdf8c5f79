from dataclasses import dataclass, field
from math import sqrt
from typing import Any, Dict, Iterable, List, Optional

import numpy as np

from dehnlab.information.write_info import write_csv


class RunningMoments:
    """Count, mean and sum of squared deviations; blocks merge pairwise (Chan et al.)."""

    def __init__(self, count: int = 0, mean: float = 0.0, m2: float = 0.0):
        self.count = count
        self.mean = mean
        self.m2 = m2

    @classmethod
    def of(cls, values: Iterable[float]) -> "RunningMoments":
        arr = np.asarray(list(values), dtype=np.float64)
        if arr.size == 0:
            return cls()
        mean = float(arr.mean())
        return cls(int(arr.size), mean, float(((arr - mean) ** 2).sum()))

    def push(self, x: float):
        self.merge(RunningMoments(1, float(x), 0.0))

    def merge(self, other: "RunningMoments") -> "RunningMoments":
        if other.count == 0:
            return self
        if self.count == 0:
            self.count, self.mean, self.m2 = other.count, other.mean, other.m2
            return self
        n = self.count + other.count
        delta = other.mean - self.mean
        self.mean += delta * other.count / n
        self.m2 += other.m2 + delta * delta * self.count * other.count / n
        self.count = n
        return self

    @property
    def variance(self) -> float:
        return self.m2 / (self.count - 1) if self.count > 1 else 0.0

    @property
    def stderr(self) -> float:
        return sqrt(self.variance / self.count) if self.count > 0 else float("nan")

    def __repr__(self):
        return f"RunningMoments(count={self.count}, mean={self.mean}, m2={self.m2})"


@dataclass(frozen=True)
class CurvePoint:
    scale: float
    value: float
    stderr: float
    sample_count: int

    @classmethod
    def from_moments(cls, scale: int, m: RunningMoments) -> "CurvePoint":
        return cls(int(scale), float(m.mean), float(m.stderr) if m.count > 1 else 0.0, m.count)


@dataclass
class Curve:
    points: List[CurvePoint] = field(default_factory=list)
    label: str = ""
    # failed samples per scale, e.g. radius cap exceeded
    failures: Dict[int, int] = field(default_factory=dict)
    meta: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        scales = [p.scale for p in self.points]
        if any(b <= a for a, b in zip(scales, scales[1:])):
            raise ValueError(f"curve scales must be strictly increasing, got {scales}")
        for p in self.points:
            if p.stderr < 0:
                raise ValueError(f"negative stderr at scale {p.scale}")

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    @property
    def scales(self) -> List[int]:
        return [p.scale for p in self.points]

    @property
    def values(self) -> List[float]:
        return [p.value for p in self.points]

    @property
    def stderrs(self) -> List[float]:
        return [p.stderr for p in self.points]

    def at(self, scale: int) -> Optional[CurvePoint]:
        for p in self.points:
            if p.scale == scale:
                return p
        return None

    def scaled(self, c: float) -> "Curve":
        return Curve(
            [CurvePoint(p.scale, c * p.value, abs(c) * p.stderr, p.sample_count) for p in self.points],
            self.label,
            dict(self.failures),
            dict(self.meta),
        )

    def to_rows(self):
        return [(p.scale, p.value, p.stderr, p.sample_count) for p in self.points]

    def to_csv(self, path, meta: Optional[Dict[str, Any]] = None):
        return write_csv(path, ["scale", "value", "stderr", "sample_count"], self.to_rows(), meta)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "label": self.label,
            "points": [p.__dict__ for p in self.points],
            "failures": {str(k): v for k, v in self.failures.items()},
            "meta": dict(self.meta),
        }
