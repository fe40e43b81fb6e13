"""Brute-force stable-model enumeration for tight programs at desk scale.

Ground truth for the pipeline's soundness claims. Works by sweeping the full
candidate space over atoms that have a defining rule (atoms without one are
false in every stable model), checking rule satisfaction, compute statements
and supportedness directly; for tight programs that is exactly the stable
semantics. The sweep is vectorized over chunks of candidates.
"""

from __future__ import annotations

import graphlib
from typing import Iterable, Sequence

import numpy as np

from .automorphism import GeneratorSet, Permutation, group_closure
from .errors import BudgetExceededError, NotTightError, UnsupportedFeatureError
from .program import (
    BASIC,
    CARDINALITY,
    CHOICE,
    FALSE_ATOM,
    MINIMIZE,
    WEIGHT,
    Program,
    Rule,
)

DEFAULT_ATOM_BUDGET = 26
DEFAULT_CLOSURE_BUDGET = 10**4
_CHUNK_BITS = 20

Interpretation = frozenset[int]


def is_tight(program: Program) -> bool:
    """True iff the positive atom dependency graph (every head depends on the
    positive body atoms of its rule) is acyclic."""
    deps: dict[int, set[int]] = {}
    for rule in program.rules:
        if rule.kind == MINIMIZE:
            continue
        positive = {lit.atom for lit in rule.body if not lit.negated}
        for head in rule.heads:
            deps.setdefault(head, set()).update(positive)
    try:
        tuple(graphlib.TopologicalSorter(deps).static_order())
    except graphlib.CycleError:
        return False
    return True


def _defined_atoms(program: Program) -> list[int]:
    atoms: set[int] = set()
    for rule in program.rules:
        if rule.kind in (BASIC, CARDINALITY, CHOICE):
            atoms.update(rule.heads)
    atoms.discard(FALSE_ATOM)
    return sorted(atoms)


def enumerate_models(program: Program, atom_budget: int = DEFAULT_ATOM_BUDGET) -> list[Interpretation]:
    """All stable models, canonically sorted. Requires a tight, weight-free
    program whose defined-atom count fits the budget."""
    if program.has_kind(WEIGHT):
        raise UnsupportedFeatureError("the oracle does not evaluate weight rules")
    if not is_tight(program):
        raise NotTightError("the oracle only handles tight programs")
    atoms = _defined_atoms(program)
    if len(atoms) > atom_budget:
        raise BudgetExceededError(
            f"{len(atoms)} candidate atoms exceed the oracle budget of {atom_budget}"
        )
    if any(a not in atoms for a in program.compute_true):
        return []  # a compute-true atom with no defining rule is unsatisfiable

    position = {a: i for i, a in enumerate(atoms)}
    false_vec_cache: dict[int, np.ndarray] = {}
    models: list[Interpretation] = []

    total = 1 << len(atoms)
    chunk = min(total, 1 << _CHUNK_BITS)
    for lo in range(0, total, chunk):
        idx = np.arange(lo, min(lo + chunk, total), dtype=np.int64)
        size = idx.shape[0]
        bits = {a: ((idx >> i) & 1).astype(bool) for a, i in position.items()}
        false_vec = np.zeros(size, dtype=bool)

        def lit_vec(atom: int, negated: bool) -> np.ndarray:
            vec = bits.get(atom, false_vec)
            return ~vec if negated else vec

        def body_holds(rule: Rule) -> np.ndarray:
            if rule.kind == CARDINALITY:
                count = np.zeros(size, dtype=np.int32)
                for atom, negated in set(rule.body):  # cardinality is over sets
                    count += lit_vec(atom, negated)
                return count >= rule.bound
            holds = np.ones(size, dtype=bool)
            for atom, negated in rule.body:
                holds &= lit_vec(atom, negated)
            return holds

        ok = np.ones(size, dtype=bool)
        support: dict[int, np.ndarray] = {}
        for rule in program.rules:
            if rule.kind == MINIMIZE:
                continue
            holds = body_holds(rule)
            for head in rule.heads:
                if head == FALSE_ATOM:
                    if rule.kind != CHOICE:
                        ok &= ~holds
                    continue
                if rule.kind != CHOICE:
                    ok &= ~holds | bits[head]
                if head in support:
                    support[head] = support[head] | holds
                else:
                    support[head] = holds
        for atom in atoms:
            ok &= ~bits[atom] | support.get(atom, false_vec)
        for atom in program.compute_true:
            ok &= bits[atom]
        for atom in set(program.compute_false):
            if atom in bits:
                ok &= ~bits[atom]
        for candidate in idx[ok]:
            value = int(candidate)
            models.append(frozenset(a for a, i in position.items() if value >> i & 1))
    models.sort(key=lambda m: tuple(sorted(m)))
    return models


def objective_values(program: Program, model: Interpretation) -> tuple[int, ...]:
    """Per-minimize-statement objective of a model, in statement order."""
    values = []
    for rule in program.rules:
        if rule.kind != MINIMIZE:
            continue
        total = 0
        for (atom, negated), weight in zip(rule.body, rule.weights):
            holds = (atom in model) != negated
            if holds:
                total += weight
        values.append(total)
    return tuple(values)


def apply_to_model(perm: Permutation, model: Interpretation) -> Interpretation:
    return frozenset(perm(a) for a in model)


def count_orbits(
    models: Sequence[Interpretation],
    generators: GeneratorSet | Iterable[Permutation],
    closure_budget: int = DEFAULT_CLOSURE_BUDGET,
) -> int:
    """Number of orbits of the model set under the generated group."""
    if isinstance(generators, GeneratorSet):
        generators = generators.generators
    closure = group_closure(generators, budget=closure_budget)
    representatives = {
        min(tuple(sorted(apply_to_model(g, model))) for g in closure) for model in models
    }
    return len(representatives)


def format_models(models: Sequence[Interpretation], symbols: dict[int, str] | None = None) -> str:
    """One model per line: true atoms by name (fallback raw id), ascending."""
    symbols = symbols or {}
    lines = [" ".join(symbols.get(a, str(a)) for a in sorted(m)) for m in models]
    return "\n".join(lines)
