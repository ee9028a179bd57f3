"""Weighted multivariate fuzzy-rule training and one-step-ahead forecasting.

Training walks consecutive pairs of the embedded series: the precedent is
the maximum-membership set of every input variable at t, the consequent
accumulates the maximum-membership target set at t+1, and each rule's
consequent weights are the normalized occurrence counts of its temporal
patterns. Forecasting fires every rule whose precedent sets are all active
for the fuzzified input (activation = minimum grade) and defuzzifies as the
activation-weighted average of the fired rules' consequent midpoints.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from . import kernels
from .dataio import MultivariateSeries
from .embedding import EmbeddingModel
from .errors import ArgumentError, SchemaError, StateError
from .fuzzy import FuzzifiedPoint, LinguisticVariable, fuzzify

__all__ = [
    "RuleLHS",
    "WeightedRHS",
    "Rule",
    "WeightedRuleBase",
    "Forecast",
    "train",
    "match_rules",
    "rule_midpoint",
    "forecast_one",
    "forecast_series",
    "export_rules_text",
]

# A rule precedent: one fuzzy-set name per input variable, in variable order.
RuleLHS = tuple[str, ...]


@dataclass(frozen=True)
class WeightedRHS:
    """Consequent of one rule: (target set name, count, weight) entries
    ordered by set index, with weights = count / total."""

    entries: tuple[tuple[str, int, float], ...]
    total: int

    def midpoint(self, centers: dict[str, float]) -> float:
        mp = 0.0
        for name, _count, weight in self.entries:
            mp += weight * centers[name]
        return mp


@dataclass(frozen=True)
class Rule:
    lhs: RuleLHS
    rhs: WeightedRHS


@dataclass(frozen=True)
class Forecast:
    value: float
    fired_rule_count: int
    fallback_used: bool


@dataclass(frozen=True)
class WeightedRuleBase:
    """The trained model: precedent -> weighted consequent map plus the
    linguistic variables and (optionally) the embedding it was built over."""

    rules: dict[RuleLHS, WeightedRHS]
    variables: tuple[LinguisticVariable, ...]
    target_name: str
    embedding: EmbeddingModel | None = None

    def __post_init__(self):
        names = [lv.name for lv in self.variables]
        if self.target_name not in names:
            raise SchemaError(
                f"target {self.target_name!r} not among rule variables {names}"
            )
        object.__setattr__(self, "_target_index", names.index(self.target_name))
        target_lv = self.variables[self._target_index]
        object.__setattr__(
            self, "_target_centers",
            {s.name: s.center for s in target_lv.sets})

    @property
    def variable_names(self) -> tuple[str, ...]:
        return tuple(lv.name for lv in self.variables)

    @property
    def target_variable(self) -> LinguisticVariable:
        return self.variables[self._target_index]

    @property
    def target_centers(self) -> dict[str, float]:
        return self._target_centers

    @property
    def raw_names(self) -> tuple[str, ...]:
        """Raw input layout expected by forecast_one: the embedding's input
        variables plus the target (when not already among them)."""
        if self.embedding is None:
            raise StateError("rule base has no fitted embedding attached")
        names = self.embedding.input_names
        if self.target_name in names:
            return names
        return names + (self.target_name,)

    def __len__(self) -> int:
        return len(self.rules)

    def sorted_rules(self) -> list[Rule]:
        return [Rule(lhs, self.rules[lhs]) for lhs in sorted(self.rules)]


def train(series: MultivariateSeries,
          variables: tuple[LinguisticVariable, ...] | list[LinguisticVariable],
          target: str | None = None,
          embedding: EmbeddingModel | None = None) -> WeightedRuleBase:
    """Induce the weighted rule base from an embedded training series.

    ``series`` columns must match ``variables`` one-to-one (the linguistic
    variables are built from this same train slice); ``target`` defaults to
    the series target.
    """
    variables = tuple(variables)
    target = target or series.target_name
    names = tuple(lv.name for lv in variables)
    if names != series.names:
        raise SchemaError(
            f"linguistic variables {names} do not match series columns "
            f"{series.names}"
        )
    if target not in names:
        raise SchemaError(f"target column {target!r} absent from series")
    if len(series) < 2:
        raise ArgumentError(
            f"need at least 2 rows to extract temporal patterns, got {len(series)}"
        )

    best = np.column_stack([
        kernels.max_membership_column(series.values[:, i], lv.lowers,
                                      lv.centers, lv.uppers)
        for i, lv in enumerate(variables)
    ])
    t_idx = names.index(target)
    target_sets = variables[t_idx].sets

    counts: dict[RuleLHS, dict[int, int]] = {}
    for t in range(len(series) - 1):
        lhs = tuple(
            variables[i].sets[best[t, i]].name for i in range(len(variables))
        )
        rhs_set = int(best[t + 1, t_idx])
        by_set = counts.setdefault(lhs, {})
        by_set[rhs_set] = by_set.get(rhs_set, 0) + 1

    rules: dict[RuleLHS, WeightedRHS] = {}
    for lhs, by_set in counts.items():
        total = sum(by_set.values())
        entries = tuple(
            (target_sets[j].name, by_set[j], by_set[j] / total)
            for j in sorted(by_set)
        )
        rules[lhs] = WeightedRHS(entries, total)
    return WeightedRuleBase(rules, variables, target, embedding)


def match_rules(rulebase: WeightedRuleBase,
                fpoint: FuzzifiedPoint) -> list[tuple[Rule, float]]:
    """Rules fired by a fuzzified input, with min-T-norm activations.

    A rule fires iff its precedent set for every variable is active in
    ``fpoint``. Returned in precedent order (sorted lexicographically) so
    downstream sums are reproducible.
    """
    if fpoint.variables != rulebase.variable_names:
        raise ArgumentError(
            f"point fuzzified over {fpoint.variables}, rule base uses "
            f"{rulebase.variable_names}"
        )
    fired = []
    for combo in product(*fpoint.active):
        lhs = tuple(name for name, _g in combo)
        rhs = rulebase.rules.get(lhs)
        if rhs is None:
            continue
        activation = min(g for _name, g in combo)
        fired.append((Rule(lhs, rhs), activation))
    fired.sort(key=lambda pair: pair[0].lhs)
    return fired


def rule_midpoint(rulebase: WeightedRuleBase, rule: Rule | WeightedRHS) -> float:
    """Weighted mean of the consequent's target-set centers."""
    rhs = rule.rhs if isinstance(rule, Rule) else rule
    if not rhs.entries:
        raise StateError("rule has an empty consequent")
    return rhs.midpoint(rulebase.target_centers)


def _forecast_embedded(rulebase: WeightedRuleBase,
                       row: np.ndarray) -> Forecast:
    fpoint = fuzzify(rulebase.variables, row)
    fired = match_rules(rulebase, fpoint)
    if not fired:
        # No precedent matches: fall back to the midpoint of the target set
        # nearest the current target value.
        x = float(row[rulebase._target_index])
        j = rulebase.target_variable.best_set(x)
        value = rulebase.target_variable.sets[j].center
        return Forecast(value, 0, True)
    num = 0.0
    den = 0.0
    for rule, activation in fired:
        num += activation * rule.rhs.midpoint(rulebase.target_centers)
        den += activation
    return Forecast(num / den, len(fired), False)


def _raw_to_embedded(rulebase: WeightedRuleBase, y: np.ndarray) -> np.ndarray:
    emb = rulebase.embedding
    raw_names = rulebase.raw_names
    y = np.asarray(y, dtype=np.float64)
    if y.shape != (len(raw_names),):
        raise ArgumentError(
            f"expected raw vector of {len(raw_names)} entries "
            f"({raw_names}), got {y.shape}"
        )
    dims = emb.embed_matrix(y[None, :len(emb.input_names)])[0]
    target_value = y[list(raw_names).index(rulebase.target_name)]
    return np.append(dims, target_value)


def forecast_one(rulebase: WeightedRuleBase, y: np.ndarray) -> Forecast:
    """One-step-ahead forecast of the target from one raw input vector.

    ``y`` follows ``rulebase.raw_names``. The vector is embedded, fuzzified,
    matched, and defuzzified as the activation-normalized weighted average of
    fired-rule midpoints.
    """
    return _forecast_embedded(rulebase, _raw_to_embedded(rulebase, y))


def forecast_series(rulebase: WeightedRuleBase,
                    series: MultivariateSeries) -> list[Forecast]:
    """Apply :func:`forecast_one` to rows 0..T-2; prediction t targets
    the actual value at t+1."""
    if len(series) == 0:
        raise ArgumentError("cannot forecast an empty series")
    raw = series.matrix_for(rulebase.raw_names)
    return [forecast_one(rulebase, raw[t]) for t in range(len(series) - 1)]


def export_rules_text(rulebase: WeightedRuleBase) -> str:
    """Human-readable rule listing, one rule per line, sorted by precedent."""
    lines = []
    for rule in rulebase.sorted_rules():
        rhs = ", ".join(
            f"{name} ({weight:.3f})" for name, _count, weight in rule.rhs.entries
        )
        lines.append(f"{' & '.join(rule.lhs)} → {rhs}")
    return "\n".join(lines) + ("\n" if lines else "")
