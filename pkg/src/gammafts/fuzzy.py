"""Triangular grid partitioning of a variable's universe of discourse.

Each variable gets ``kappa`` evenly spaced fuzzy sets with 50% overlap: every
interior set's support spans its two neighbouring centers, and the two edge
sets are shoulder-flat beyond the universe bounds so out-of-range values
clamp to the nearest boundary set with grade 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ArgumentError, DegenerateUodError

__all__ = [
    "FuzzySet",
    "LinguisticVariable",
    "FuzzifiedPoint",
    "build_partitioner",
    "fuzzify",
]


@dataclass(frozen=True)
class FuzzySet:
    """One triangular fuzzy set; degenerate lower==center (or center==upper)
    marks a left (right) shoulder set at a universe boundary."""

    name: str
    lower: float
    center: float
    upper: float
    variable: str

    def __post_init__(self):
        if not (self.lower <= self.center <= self.upper):
            raise ArgumentError(
                f"{self.name}: lower <= center <= upper violated"
            )
        if self.lower == self.upper:
            raise ArgumentError(f"{self.name}: empty support")

    def membership(self, x: float) -> float:
        # Keep in sync with the kernel backends (_core_py / _core_cy): the
        # exact same arithmetic, branch for branch.
        if x == self.center:
            return 1.0
        if x < self.center:
            if self.lower == self.center:
                return 1.0
            if x <= self.lower:
                return 0.0
            return (x - self.lower) / (self.center - self.lower)
        if self.upper == self.center:
            return 1.0
        if x >= self.upper:
            return 0.0
        return (self.upper - x) / (self.upper - self.center)


@dataclass(frozen=True)
class LinguisticVariable:
    """Ordered family of fuzzy sets partitioning one variable's universe."""

    name: str
    sets: tuple[FuzzySet, ...]
    lb: float
    ub: float

    def __post_init__(self):
        centers = np.array([s.center for s in self.sets], dtype=np.float64)
        if len(centers) < 2:
            raise ArgumentError("a linguistic variable needs >= 2 sets")
        if not np.all(np.diff(centers) > 0):
            raise ArgumentError("set centers must be strictly increasing")
        object.__setattr__(self, "_centers", centers)
        object.__setattr__(
            self, "_lowers",
            np.array([s.lower for s in self.sets], dtype=np.float64))
        object.__setattr__(
            self, "_uppers",
            np.array([s.upper for s in self.sets], dtype=np.float64))

    @property
    def centers(self) -> np.ndarray:
        return self._centers

    @property
    def lowers(self) -> np.ndarray:
        return self._lowers

    @property
    def uppers(self) -> np.ndarray:
        return self._uppers

    def __len__(self) -> int:
        return len(self.sets)

    def active_sets(self, x: float) -> list[tuple[int, float]]:
        """All (set index, grade) with grade > 0, ascending by index.

        At most two sets are active on the 50%-overlap grid; only the two
        sets whose centers bracket ``x`` can have positive grade.
        """
        if not np.isfinite(x):
            raise ArgumentError(f"cannot fuzzify non-finite value {x!r}")
        i = int(np.searchsorted(self._centers, x))
        out = []
        for j in (i - 1, i):
            if not 0 <= j < len(self.sets):
                continue
            g = self.sets[j].membership(x)
            if g > 0.0:
                out.append((j, g))
        if not out:
            # x beyond the outermost center: the shoulder set clamps it.
            j = 0 if i == 0 else len(self.sets) - 1
            out.append((j, 1.0))
        return out

    def best_set(self, x: float) -> int:
        """Index of the maximum-grade set; ties resolve to the lower index."""
        active = self.active_sets(x)
        best_j, best_g = active[0]
        for j, g in active[1:]:
            if g > best_g:
                best_j, best_g = j, g
        return best_j

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "lb": self.lb,
            "ub": self.ub,
            "sets": [
                {"name": s.name, "lower": s.lower, "center": s.center,
                 "upper": s.upper}
                for s in self.sets
            ],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "LinguisticVariable":
        sets = tuple(
            FuzzySet(s["name"], s["lower"], s["center"], s["upper"], d["name"])
            for s in d["sets"]
        )
        return cls(d["name"], sets, d["lb"], d["ub"])


def build_partitioner(values, kappa: int, margin: float = 0.1, *,
                      name: str) -> LinguisticVariable:
    """Build the linguistic variable for one variable from training values.

    The universe is the training range extrapolated by ``margin`` on each
    side; an extremum of exactly 0 contributes a unit magnitude so the margin
    never collapses there. ``kappa`` centers are evenly spaced across the
    universe.
    """
    if kappa < 2:
        raise ArgumentError(f"kappa must be >= 2, got {kappa}")
    if not 0.0 < margin < 1.0:
        raise ArgumentError(f"margin must be in (0, 1), got {margin}")
    vals = np.asarray(values, dtype=np.float64)
    if vals.size == 0:
        raise ArgumentError("cannot partition an empty value set")
    if not np.isfinite(vals).all():
        raise ArgumentError(f"non-finite training values for {name!r}")
    vmin = float(vals.min())
    vmax = float(vals.max())
    if vmin == vmax:
        raise DegenerateUodError(
            f"variable {name!r} is constant ({vmin}); no universe to partition"
        )
    lb = vmin - margin * (abs(vmin) if vmin != 0.0 else 1.0)
    ub = vmax + margin * (abs(vmax) if vmax != 0.0 else 1.0)
    centers = np.linspace(lb, ub, kappa)
    sets = []
    for j in range(kappa):
        lower = centers[j - 1] if j > 0 else centers[0]
        upper = centers[j + 1] if j < kappa - 1 else centers[-1]
        sets.append(FuzzySet(f"{name}.A{j}", float(lower), float(centers[j]),
                             float(upper), name))
    return LinguisticVariable(name, tuple(sets), lb, ub)


@dataclass(frozen=True)
class FuzzifiedPoint:
    """Per-variable active fuzzy sets of one crisp vector.

    ``active[i]`` lists the (set name, grade) pairs with grade > 0 for the
    i-th variable, ascending by set index.
    """

    variables: tuple[str, ...]
    active: tuple[tuple[tuple[str, float], ...], ...]

    def for_variable(self, name: str) -> tuple[tuple[str, float], ...]:
        return self.active[self.variables.index(name)]


def fuzzify(variables: list[LinguisticVariable] | tuple[LinguisticVariable, ...],
            y) -> FuzzifiedPoint:
    """Fuzzify a crisp vector against one linguistic variable per entry."""
    y = np.asarray(y, dtype=np.float64)
    if y.ndim != 1 or len(y) != len(variables):
        raise ArgumentError(
            f"vector of {y.size} entries for {len(variables)} variables"
        )
    active = tuple(
        tuple((lv.sets[j].name, g) for j, g in lv.active_sets(x))
        for lv, x in zip(variables, y)
    )
    return FuzzifiedPoint(tuple(lv.name for lv in variables), active)
