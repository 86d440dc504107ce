"""Finite abelian groups and non-negative integer group-algebra vectors.

State sums live in the integral group algebra Z[A] of a finite abelian
group A, restricted to non-negative coefficients (each coefficient
counts colorings).  Coefficients are exact Python ints, so they may be
astronomically large; the float view is taken only at the very end,
through logarithms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property


@dataclass(frozen=True)
class AbelianGroup:
    """Finite abelian group as a multiplication table over indices."""

    order: int
    mul: tuple[tuple[int, ...], ...]
    identity: int
    labels: tuple[str, ...]

    @cached_property
    def inverse_table(self) -> tuple[int, ...]:
        inv = [-1] * self.order
        for i in range(self.order):
            for j in range(self.order):
                if self.mul[i][j] == self.identity:
                    inv[i] = j
                    break
            if inv[i] < 0:
                raise ValueError(f"group element {i} has no inverse")
        return tuple(inv)

    def multiply(self, i: int, j: int) -> int:
        return self.mul[i][j]

    def inverse(self, i: int) -> int:
        return self.inverse_table[i]

    def power(self, i: int, exponent: int) -> int:
        if exponent < 0:
            return self.power(self.inverse(i), -exponent)
        acc = self.identity
        for _ in range(exponent):
            acc = self.mul[acc][i]
        return acc

    def validate(self) -> list[str]:
        """Return a list of structure problems; empty means a valid abelian group."""
        issues = []
        n = self.order
        if len(self.mul) != n or any(len(row) != n for row in self.mul):
            return [f"multiplication table is not {n}x{n}"]
        if any(not 0 <= v < n for row in self.mul for v in row):
            return ["multiplication table entry out of range"]
        if not 0 <= self.identity < n:
            return [f"identity index {self.identity} out of range"]
        for i in range(n):
            if self.mul[self.identity][i] != i or self.mul[i][self.identity] != i:
                issues.append(f"{i} is not fixed by the identity")
        for i in range(n):
            for j in range(i + 1, n):
                if self.mul[i][j] != self.mul[j][i]:
                    issues.append(f"not commutative at ({i}, {j})")
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if self.mul[self.mul[i][j]][k] != self.mul[i][self.mul[j][k]]:
                        issues.append(f"not associative at ({i}, {j}, {k})")
        for i in range(n):
            if self.identity not in {self.mul[i][j] for j in range(n)}:
                issues.append(f"{i} has no inverse")
        return issues


def build_cyclic_group(order: int) -> AbelianGroup:
    """Cyclic group of the given order with labels 1, t, t^2, ..."""
    if order < 1:
        raise ValueError(f"group order must be >= 1, got {order}")
    mul = tuple(tuple((i + j) % order for j in range(order)) for i in range(order))
    labels = tuple("1" if k == 0 else ("t" if k == 1 else f"t^{k}") for k in range(order))
    return AbelianGroup(order=order, mul=mul, identity=0, labels=labels)


def group_from_labels(labels) -> AbelianGroup:
    """Rebuild the cyclic group a serialized element was written over."""
    group = build_cyclic_group(len(labels))
    return AbelianGroup(group.order, group.mul, group.identity, tuple(labels))


@dataclass(frozen=True)
class GroupAlgebraElement:
    """Element of Z[A] with non-negative exact integer coefficients."""

    group: AbelianGroup
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.group.order:
            raise ValueError(
                f"{len(self.coeffs)} coefficients for a group of order {self.group.order}"
            )
        if any(c < 0 for c in self.coeffs):
            raise ValueError("group algebra coefficients must be non-negative")

    @classmethod
    def zero(cls, group: AbelianGroup) -> "GroupAlgebraElement":
        return cls(group, (0,) * group.order)

    def accumulate(self, index: int) -> "GroupAlgebraElement":
        """Return a copy with the coefficient of group element ``index`` bumped by 1."""
        coeffs = list(self.coeffs)
        coeffs[index] += 1
        return GroupAlgebraElement(self.group, tuple(coeffs))

    def coefficient_sum(self) -> int:
        return sum(self.coeffs)

    def as_vector(self) -> tuple[float, ...]:
        return tuple(float(c) for c in self.coeffs)

    def __str__(self) -> str:
        parts = [f"{c}*{lbl}" for c, lbl in zip(self.coeffs, self.group.labels) if c]
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {
            "group_labels": list(self.group.labels),
            "coeffs": [str(c) for c in self.coeffs],
        }


def element_from_json(data: dict, group: AbelianGroup | None = None) -> GroupAlgebraElement:
    labels = tuple(data["group_labels"])
    if group is None:
        group = group_from_labels(labels)
    elif tuple(group.labels) != labels:
        raise ValueError("serialized element was written over a different group")
    return GroupAlgebraElement(group, tuple(int(c) for c in data["coeffs"]))


def euclidean_distance(u, v) -> float:
    """Plain Euclidean distance between two coordinate tuples."""
    u, v = tuple(u), tuple(v)
    if len(u) != len(v):
        raise ValueError(f"dimension mismatch: {len(u)} vs {len(v)}")
    return math.dist(u, v)
