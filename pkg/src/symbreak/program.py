"""In-memory model of grounded logic programs in the numeric smodels dialect.

Atom ids are positive integers; id 1 is the reserved always-false atom that
serves as the head of integrity constraints. Literals carry default negation
only. Rule bodies keep their file order so documents round-trip exactly;
semantic comparisons treat bodies (and choice heads) as multisets.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Iterable, Iterator, NamedTuple

if TYPE_CHECKING:
    from .automorphism import Permutation

FALSE_ATOM = 1

BASIC = "basic"
CARDINALITY = "cardinality"
CHOICE = "choice"
WEIGHT = "weight"
MINIMIZE = "minimize"

RULE_KINDS = (BASIC, CARDINALITY, CHOICE, WEIGHT, MINIMIZE)


class Literal(NamedTuple):
    atom: int
    negated: bool = False

    def __str__(self) -> str:
        return f"not {self.atom}" if self.negated else str(self.atom)


@dataclass(frozen=True)
class Rule:
    """One rule. `bound` is set for cardinality/weight rules, `weights` for
    weight/minimize rules (aligned index-wise with `body`)."""

    kind: str
    heads: tuple[int, ...]
    body: tuple[Literal, ...] = ()
    bound: int | None = None
    weights: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.kind not in RULE_KINDS:
            raise ValueError(f"unknown rule kind {self.kind!r}")
        if self.kind in (BASIC, CARDINALITY, WEIGHT) and len(self.heads) != 1:
            raise ValueError(f"{self.kind} rule needs exactly one head")
        if self.kind == CHOICE and not self.heads:
            raise ValueError("choice rule needs at least one head")
        if self.kind == MINIMIZE and self.heads:
            raise ValueError("minimize statement has no head")
        if self.kind in (CARDINALITY, WEIGHT):
            if self.bound is None or self.bound < 0:
                raise ValueError(f"{self.kind} rule needs a nonnegative bound")
        if self.kind in (WEIGHT, MINIMIZE):
            if self.weights is None or len(self.weights) != len(self.body):
                raise ValueError(f"{self.kind} rule needs one weight per body literal")

    def atoms(self) -> Iterator[int]:
        yield from self.heads
        for lit in self.body:
            yield lit.atom

    def canonical_key(self):
        """Order-insensitive identity: heads and body as multisets, weights
        paired with their literals."""
        if self.weights is not None:
            body_key = tuple(sorted(zip(self.body, self.weights)))
        else:
            body_key = tuple(sorted(self.body))
        return (self.kind, tuple(sorted(self.heads)), self.bound, body_key)


@dataclass
class Program:
    """A grounded program plus its symbol table and compute statements.

    Treated as immutable after construction except for fresh-atom allocation,
    which only ever advances `max_atom`.
    """

    rules: list[Rule] = field(default_factory=list)
    symbols: dict[int, str] = field(default_factory=dict)
    compute_true: tuple[int, ...] = ()
    compute_false: tuple[int, ...] = ()
    max_atom: int = FALSE_ATOM
    model_count_request: int = 1

    def copy(self) -> "Program":
        return Program(
            rules=list(self.rules),
            symbols=dict(self.symbols),
            compute_true=self.compute_true,
            compute_false=self.compute_false,
            max_atom=self.max_atom,
            model_count_request=self.model_count_request,
        )

    def atoms_used(self) -> set[int]:
        used = set()
        for rule in self.rules:
            used.update(rule.atoms())
        used.update(self.compute_true)
        used.update(self.compute_false)
        used.update(self.symbols)
        return used

    def validate(self) -> None:
        for a in self.atoms_used():
            if not 1 <= a <= self.max_atom:
                raise ValueError(f"atom {a} outside 1..{self.max_atom}")

    def has_kind(self, kind: str) -> bool:
        return any(r.kind == kind for r in self.rules)


def fresh_atoms(program: Program, n: int) -> list[int]:
    """Allocate n consecutive new atom ids (no symbol-table entries)."""
    if n < 0:
        raise ValueError("cannot allocate a negative number of atoms")
    ids = list(range(program.max_atom + 1, program.max_atom + 1 + n))
    program.max_atom += n
    return ids


def apply_permutation(program: Program, perm: "Permutation") -> Program:
    """Substitute every atom occurrence (heads, bodies, compute statements)
    by its image. Rule order, kinds, bounds and body order are preserved.

    The permutation must fix the reserved atom 1 and stay within
    1..max_atom.
    """
    for a, b in perm.mapping.items():
        if a == FALSE_ATOM or b == FALSE_ATOM:
            raise ValueError("permutation must fix the reserved atom 1")
        if not (1 <= a <= program.max_atom and 1 <= b <= program.max_atom):
            raise ValueError(f"permutation moves atom {a} outside 1..{program.max_atom}")

    def image(a: int) -> int:
        return perm(a)

    rules = [
        Rule(
            kind=r.kind,
            heads=tuple(image(h) for h in r.heads),
            body=tuple(Literal(image(l.atom), l.negated) for l in r.body),
            bound=r.bound,
            weights=r.weights,
        )
        for r in program.rules
    ]
    return Program(
        rules=rules,
        symbols=dict(program.symbols),
        compute_true=tuple(image(a) for a in program.compute_true),
        compute_false=tuple(image(a) for a in program.compute_false),
        max_atom=program.max_atom,
        model_count_request=program.model_count_request,
    )


def programs_equal_modulo_rule_order(a: Program, b: Program) -> bool:
    """True iff the rule multisets agree (bodies and choice heads compared as
    multisets) and the compute statements agree as sets."""
    if set(a.compute_true) != set(b.compute_true):
        return False
    if set(a.compute_false) != set(b.compute_false):
        return False
    return Counter(r.canonical_key() for r in a.rules) == Counter(
        r.canonical_key() for r in b.rules
    )
