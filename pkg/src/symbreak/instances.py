"""Generators for desk-scale benchmark programs: pigeon-hole placement and
the cabinet configuration problem (the "empty" house family).

Both families are tight by construction and carry symbol names for their
assignment atoms only; auxiliary cardinality heads stay unnamed, like
grounder-introduced atoms.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .program import (
    BASIC,
    CARDINALITY,
    CHOICE,
    FALSE_ATOM,
    MINIMIZE,
    Literal,
    Program,
    Rule,
)


@dataclass(frozen=True)
class PhpSpec:
    pigeons: int
    holes: int

    def __post_init__(self):
        if self.pigeons < 1 or self.holes < 1:
            raise ValueError("need at least one pigeon and one hole")

    def name(self) -> str:
        return f"php_p{self.pigeons:02d}h{self.holes:02d}"


@dataclass(frozen=True)
class HouseSpec:
    """Cabinet-assignment instance: every thing goes into exactly one cabinet,
    cabinets hold at most `capacity` things, and no cabinet mixes things of
    different persons. `things_per_person` may be a single count or one count
    per person. A cabinet cost adds used-cabinet atoms and a minimize
    statement."""

    persons: int
    things_per_person: int | tuple[int, ...]
    cabinets: int
    capacity: int = 2
    cabinet_cost: int | None = None

    def __post_init__(self):
        if self.persons < 1 or self.cabinets < 1 or self.capacity < 1:
            raise ValueError("persons, cabinets and capacity must be at least 1")
        counts = self.thing_counts()
        if len(counts) != self.persons or any(t < 1 for t in counts):
            raise ValueError("need a positive thing count per person")
        if self.cabinet_cost is not None and self.cabinet_cost < 0:
            raise ValueError("cabinet cost must be nonnegative")
        needed = sum(math.ceil(t / self.capacity) for t in counts)
        if self.cabinets < needed:
            warnings.warn(
                f"{self.cabinets} cabinets cannot fit {sum(counts)} things of "
                f"{self.persons} persons at capacity {self.capacity} "
                f"(needs {needed}); instance is unsatisfiable",
                stacklevel=2,
            )

    def thing_counts(self) -> tuple[int, ...]:
        if isinstance(self.things_per_person, int):
            return (self.things_per_person,) * self.persons
        return tuple(self.things_per_person)

    def total_things(self) -> int:
        return sum(self.thing_counts())

    def name(self) -> str:
        return f"empty_p{self.persons:02d}t{self.total_things():03d}"


def manifest_line(spec: PhpSpec | HouseSpec) -> str:
    """One-line sidecar record of the generating parameters."""
    if isinstance(spec, PhpSpec):
        return f"php pigeons={spec.pigeons} holes={spec.holes}"
    things = ",".join(str(t) for t in spec.thing_counts())
    cost = "none" if spec.cabinet_cost is None else str(spec.cabinet_cost)
    return (
        f"house persons={spec.persons} things={things} "
        f"cabinets={spec.cabinets} capacity={spec.capacity} cost={cost}"
    )


def gen_php(spec: PhpSpec) -> Program:
    """Exactly one hole per pigeon (choice + constraints), at most one pigeon
    per hole (pairwise constraints)."""
    n, m = spec.pigeons, spec.holes

    def atom(p: int, h: int) -> int:
        return 1 + (p - 1) * m + h

    symbols = {atom(p, h): f"in({p},{h})" for p in range(1, n + 1) for h in range(1, m + 1)}
    rules: list[Rule] = []
    for p in range(1, n + 1):
        row = [atom(p, h) for h in range(1, m + 1)]
        rules.append(Rule(CHOICE, tuple(row)))
        rules.append(Rule(BASIC, (FALSE_ATOM,), tuple(Literal(a, True) for a in row)))
        for i in range(m):
            for j in range(i + 1, m):
                rules.append(
                    Rule(BASIC, (FALSE_ATOM,), (Literal(row[i]), Literal(row[j])))
                )
    for h in range(1, m + 1):
        for p1 in range(1, n + 1):
            for p2 in range(p1 + 1, n + 1):
                rules.append(
                    Rule(BASIC, (FALSE_ATOM,), (Literal(atom(p1, h)), Literal(atom(p2, h))))
                )
    return Program(rules=rules, symbols=symbols, max_atom=1 + n * m)


def gen_house(spec: HouseSpec) -> Program:
    """Ground the cabinet encoding: per thing a choice over cabinets plus a
    cardinality-backed exactly-one; per cabinet a forbidden bound-(capacity+1)
    cardinality head; a no-sharing constraint per cabinet and conflicting
    thing pair; optionally used-cabinet atoms under a minimize statement."""
    counts = spec.thing_counts()
    T = spec.total_things()
    C = spec.cabinets
    owner: dict[int, int] = {}
    t = 1
    for person, count in enumerate(counts, start=1):
        for _ in range(count):
            owner[t] = person
            t += 1

    def c2t(c: int, t: int) -> int:
        return 1 + (t - 1) * C + c

    overfull = {t: 1 + T * C + t for t in range(1, T + 1)}  # >1 cabinet for thing t
    exceeded = {c: 1 + T * C + T + c for c in range(1, C + 1)}  # cabinet c over capacity
    max_atom = 1 + T * C + T + C
    used: dict[int, int] = {}
    if spec.cabinet_cost is not None:
        used = {c: max_atom + c for c in range(1, C + 1)}
        max_atom += C

    symbols = {
        c2t(c, t): f"cabinetTOthing({c},{t})"
        for t in range(1, T + 1)
        for c in range(1, C + 1)
    }

    rules: list[Rule] = []
    for t in range(1, T + 1):
        column = [c2t(c, t) for c in range(1, C + 1)]
        rules.append(Rule(CHOICE, tuple(column)))
        rules.append(Rule(BASIC, (FALSE_ATOM,), tuple(Literal(a, True) for a in column)))
        rules.append(
            Rule(CARDINALITY, (overfull[t],), tuple(Literal(a) for a in column), bound=2)
        )
        rules.append(Rule(BASIC, (FALSE_ATOM,), (Literal(overfull[t]),)))
    for c in range(1, C + 1):
        row = [c2t(c, t) for t in range(1, T + 1)]
        rules.append(
            Rule(
                CARDINALITY,
                (exceeded[c],),
                tuple(Literal(a) for a in row),
                bound=spec.capacity + 1,
            )
        )
        rules.append(Rule(BASIC, (FALSE_ATOM,), (Literal(exceeded[c]),)))
    for c in range(1, C + 1):
        for t1 in range(1, T + 1):
            for t2 in range(t1 + 1, T + 1):
                if owner[t1] != owner[t2]:
                    rules.append(
                        Rule(BASIC, (FALSE_ATOM,), (Literal(c2t(c, t1)), Literal(c2t(c, t2))))
                    )
    if used:
        for c in range(1, C + 1):
            for t in range(1, T + 1):
                rules.append(Rule(BASIC, (used[c],), (Literal(c2t(c, t)),)))
        body = tuple(Literal(used[c]) for c in range(1, C + 1))
        rules.append(
            Rule(MINIMIZE, (), body, weights=(spec.cabinet_cost,) * C)
        )
    return Program(rules=rules, symbols=symbols, max_atom=max_atom)
