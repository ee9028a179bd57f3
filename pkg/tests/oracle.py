"""Independent brute-force reference for rule training and forecasting.

Deliberately naive: every membership is computed by scanning every set,
rules are kept as a flat list and matched by full scan, and nothing from the
package's rule/forecast machinery is reused. Summations follow the same
canonical order the package documents (rules sorted by precedent names,
consequents sorted by set index), so agreement is expected bit-for-bit.
"""

from __future__ import annotations


def tri_membership(lower: float, center: float, upper: float, x: float) -> float:
    if x == center:
        return 1.0
    if x < center:
        if lower == center:
            return 1.0
        if x <= lower:
            return 0.0
        return (x - lower) / (center - lower)
    if upper == center:
        return 1.0
    if x >= upper:
        return 0.0
    return (upper - x) / (upper - center)


class NaiveWmvfts:
    """Enumerative weighted-rule model over an already-embedded matrix.

    ``variables`` is a list of (name, [(set_name, lower, center, upper), ...])
    in column order; ``target_index`` selects the forecast column.
    """

    def __init__(self, variables, target_index):
        self.variables = variables
        self.target_index = target_index

    def memberships(self, col: int, x: float):
        _name, sets = self.variables[col]
        return [(s[0], tri_membership(s[1], s[2], s[3], x)) for s in sets]

    def best_set_name(self, col: int, x: float) -> str:
        grades = self.memberships(col, x)
        best_name, best_g = grades[0]
        for name, g in grades[1:]:
            if g > best_g:
                best_name, best_g = name, g
        return best_name

    def fit(self, matrix):
        transitions = []
        for t in range(len(matrix) - 1):
            lhs = tuple(
                self.best_set_name(i, matrix[t][i])
                for i in range(len(self.variables))
            )
            rhs = self.best_set_name(self.target_index, matrix[t + 1][self.target_index])
            transitions.append((lhs, rhs))

        grouped = {}
        for lhs, rhs in transitions:
            grouped.setdefault(lhs, []).append(rhs)

        target_sets = self.variables[self.target_index][1]
        set_order = {s[0]: j for j, s in enumerate(target_sets)}
        self.centers = {s[0]: s[2] for s in target_sets}
        self.rules = []
        for lhs in sorted(grouped):
            outcomes = grouped[lhs]
            total = len(outcomes)
            by_set = {}
            for name in outcomes:
                by_set[name] = by_set.get(name, 0) + 1
            entries = [
                (name, by_set[name], by_set[name] / total)
                for name in sorted(by_set, key=lambda n: set_order[n])
            ]
            self.rules.append((lhs, entries))
        return self

    def match(self, row):
        fired = []
        for lhs, entries in self.rules:
            activation = None
            for i, set_name in enumerate(lhs):
                grade = 0.0
                for name, g in self.memberships(i, row[i]):
                    if name == set_name:
                        grade = g
                        break
                if grade <= 0.0:
                    activation = None
                    break
                if activation is None or grade < activation:
                    activation = grade
            if activation is not None:
                fired.append((lhs, entries, activation))
        return fired

    def rule_midpoint(self, entries) -> float:
        mp = 0.0
        for name, _count, weight in entries:
            mp += weight * self.centers[name]
        return mp

    def forecast(self, row):
        fired = self.match(row)
        if not fired:
            name = self.best_set_name(self.target_index, row[self.target_index])
            return self.centers[name], 0, True
        num = 0.0
        den = 0.0
        for _lhs, entries, activation in fired:
            num += activation * self.rule_midpoint(entries)
            den += activation
        return num / den, len(fired), False
