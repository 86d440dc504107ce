"""State-sum invariants of braid closures and the per-crossing free energy.

The state sum Z adds one group-algebra term per closure coloring: the
product over crossings of phi(under, over)^sign.  With the trivial
cocycle it degenerates to the coloring count times the identity.  The
free energy applies coordinate-wise extended log (log 0 := 0) to the
coefficient vector; dividing by the diagram's crossing number gives the
per-crossing free energy, which is the quantity whose limits along
braid families are studied in the limits module.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from itertools import product
from pathlib import Path

from .braid import BraidWord, DEFAULT_BUDGET, BudgetExceededError, _run_word, is_alternating_closure, is_reduced_closure
from .cocycle import Cocycle, CocycleError
from .group_algebra import GroupAlgebraElement, element_from_json
from .quandle import QuandleTable


class NotReducedAlternatingError(ValueError):
    """The closure diagram was not verified reduced and alternating."""


def cjkls_state_sum(
    word: BraidWord,
    quandle: QuandleTable,
    cocycle: Cocycle,
    budget: int = DEFAULT_BUDGET,
) -> GroupAlgebraElement:
    """Exact state sum of the braid closure over all colorings.

    Enumerates quandle_size ** strands candidate top tuples (subject to
    ``budget``) and accumulates the crossing-weight product of each
    closure coloring.  The coefficient sum of the result equals the
    number of colorings, so it is at least quandle_size (constant
    colorings always close up with identity weight).
    """
    if cocycle.quandle.op != quandle.op:
        raise CocycleError("cocycle is defined over a different quandle")
    total = quandle.size**word.strands
    if total > budget:
        raise BudgetExceededError(
            f"{total} candidate tuples exceed the budget {budget}"
        )

    op, inv_op = quandle.op, quandle.inv_op
    phi = cocycle.table
    group = cocycle.group
    gmul = group.mul
    ginv = group.inverse_table
    identity = group.identity
    letters = word.letters

    coeffs = [0] * group.order
    for top in product(range(quandle.size), repeat=word.strands):
        v = list(top)
        weight = _run_word(letters, op, inv_op, v, phi=phi, gmul=gmul, ginv=ginv, identity=identity)
        if tuple(v) == top:
            coeffs[weight] += 1
    return GroupAlgebraElement(group, tuple(coeffs))


def free_energy(z: GroupAlgebraElement) -> tuple[float, ...]:
    """Coordinate-wise extended log of the coefficient vector (log 0 := 0).

    Logs are taken on the exact integers, so coefficients far beyond
    float range are fine.
    """
    return tuple(math.log(c) if c > 0 else 0.0 for c in z.coeffs)


def free_energy_per_crossing(z: GroupAlgebraElement, crossing_number: int) -> tuple[float, ...]:
    """free_energy(z) divided by the crossing number of the underlying diagram."""
    if crossing_number < 1:
        raise ValueError(f"crossing number must be >= 1, got {crossing_number}")
    return tuple(x / crossing_number for x in free_energy(z))


def crossing_number_reduced_alternating(word: BraidWord) -> int:
    """Crossing count, valid as the crossing number of the closure.

    For a reduced alternating diagram the crossing count is minimal
    over all diagrams of the knot, so it can be reported as the
    crossing number.  Raises NotReducedAlternatingError otherwise: a
    non-minimal diagram would silently skew every per-crossing
    quantity.
    """
    if not is_alternating_closure(word):
        raise NotReducedAlternatingError("closure diagram is not alternating")
    if not is_reduced_closure(word):
        raise NotReducedAlternatingError("closure diagram is alternating but not reduced")
    return len(word.letters)


@dataclass(frozen=True)
class InvariantRecord:
    """One computed invariant: braid, data hashes, Z, and derived values."""

    braid: str
    quandle_id: str
    cocycle_id: str
    z: GroupAlgebraElement
    coloring_count: int
    crossing_number: int | None
    f: tuple[float, ...] | None

    def __post_init__(self):
        if self.f is not None and self.crossing_number is None:
            raise ValueError("per-crossing free energy without a crossing number")
        if self.coloring_count != self.z.coefficient_sum():
            raise ValueError("coloring count does not match the state-sum coefficients")

    def to_json(self) -> dict:
        return {
            "braid": self.braid,
            "quandle_id": self.quandle_id,
            "cocycle_id": self.cocycle_id,
            "Z": self.z.to_json(),
            "coloring_count": self.coloring_count,
            "crossing_number": self.crossing_number,
            "f": list(self.f) if self.f is not None else None,
        }


def record_from_json(data: dict) -> InvariantRecord:
    f = data.get("f")
    return InvariantRecord(
        braid=data["braid"],
        quandle_id=data["quandle_id"],
        cocycle_id=data["cocycle_id"],
        z=element_from_json(data["Z"]),
        coloring_count=int(data["coloring_count"]),
        crossing_number=(None if data.get("crossing_number") is None else int(data["crossing_number"])),
        f=None if f is None else tuple(float(x) for x in f),
    )


class InvariantCache:
    """Append-only JSON-lines store keyed by (braid, quandle id, cocycle id)."""

    def __init__(self, path):
        self.path = Path(path)
        self._records: dict[tuple[str, str, str], InvariantRecord] = {}
        if self.path.exists():
            with open(self.path, "r", encoding="utf-8") as fh:
                for line in fh:
                    line = line.strip()
                    if not line:
                        continue
                    rec = record_from_json(json.loads(line))
                    self._records[(rec.braid, rec.quandle_id, rec.cocycle_id)] = rec

    def __len__(self) -> int:
        return len(self._records)

    def lookup(self, braid: str, quandle_id: str, cocycle_id: str) -> InvariantRecord | None:
        return self._records.get((braid, quandle_id, cocycle_id))

    def store(self, record: InvariantRecord) -> None:
        key = (record.braid, record.quandle_id, record.cocycle_id)
        if key in self._records:
            return
        self._records[key] = record
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with open(self.path, "a", encoding="utf-8") as fh:
            fh.write(json.dumps(record.to_json(), sort_keys=True) + "\n")


def compute_invariant(
    word: BraidWord,
    quandle: QuandleTable,
    cocycle: Cocycle,
    *,
    budget: int = DEFAULT_BUDGET,
    assume_crossing_number: int | None = None,
    cache: InvariantCache | None = None,
) -> InvariantRecord:
    """Full record for one braid: Z, coloring count, crossing number, f.

    The crossing number is taken from ``assume_crossing_number`` when
    given, otherwise derived from the diagram when its closure is
    verified reduced and alternating, otherwise left unset (and f with
    it).  A cache hit skips all computation.
    """
    braid = word.canonical()
    quandle_id = quandle.content_hash()
    cocycle_id = cocycle.content_hash()
    if cache is not None:
        hit = cache.lookup(braid, quandle_id, cocycle_id)
        if hit is not None:
            return hit

    z = cjkls_state_sum(word, quandle, cocycle, budget=budget)
    crossing_number = assume_crossing_number
    if crossing_number is None:
        try:
            crossing_number = crossing_number_reduced_alternating(word)
        except NotReducedAlternatingError:
            crossing_number = None
    f = free_energy_per_crossing(z, crossing_number) if crossing_number else None
    record = InvariantRecord(
        braid=braid,
        quandle_id=quandle_id,
        cocycle_id=cocycle_id,
        z=z,
        coloring_count=z.coefficient_sum(),
        crossing_number=crossing_number,
        f=f,
    )
    if cache is not None:
        cache.store(record)
    return record
