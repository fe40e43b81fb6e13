"""Detect/break/verify plumbing shared by the CLI and the HTTP service."""

from __future__ import annotations

import sys
import time
from dataclasses import dataclass, field

from .automorphism import GeneratorSet, find_generators, group_closure
from .graph import ColoredGraph, build_graph
from .oracle import (
    DEFAULT_ATOM_BUDGET,
    DEFAULT_CLOSURE_BUDGET,
    apply_to_model,
    count_orbits,
    enumerate_models,
    objective_values,
)
from .program import (
    MINIMIZE,
    Program,
    apply_permutation,
    programs_equal_modulo_rule_order,
)
from .sbc import break_symmetries
from .smodels import SmodelsDocument, render_symbolic


@dataclass
class DetectResult:
    program: Program
    graph: ColoredGraph
    generators: GeneratorSet
    dropped: int = 0
    elapsed: dict[str, float] = field(default_factory=dict)

    def raw_lines(self) -> list[str]:
        return [g.cycle_string() for g in self.generators]

    def symbolic_lines(self) -> list[str]:
        return [render_symbolic(self.program, g) for g in self.generators]


def run_detect(program: Program, limit: int | None = None, seed: int = 0) -> DetectResult:
    """Build the colored graph, search for generators and keep only those
    that provably map the program's rule multiset to itself. A drop can only
    happen on degenerate inputs (duplicate body literals, minimize statements
    with orbit-dependent weights) and is reported on stderr."""
    t0 = time.perf_counter()
    graph = build_graph(program)
    t1 = time.perf_counter()
    generators = find_generators(graph, limit=limit, seed=seed)
    t2 = time.perf_counter()

    kept = GeneratorSet(stats=generators.stats)
    dropped = 0
    for atom_perm, vertex_perm in zip(generators.generators, generators.graph_generators):
        if programs_equal_modulo_rule_order(apply_permutation(program, atom_perm), program):
            kept.generators.append(atom_perm)
            kept.graph_generators.append(vertex_perm)
        else:
            dropped += 1
            print(
                f"warning: dropped graph automorphism that does not preserve the "
                f"program: {atom_perm.cycle_string()}",
                file=sys.stderr,
            )
    return DetectResult(
        program=program,
        graph=graph,
        generators=kept,
        dropped=dropped,
        elapsed={"build_graph": t1 - t0, "find_generators": t2 - t1},
    )


@dataclass
class BreakResult:
    detect: DetectResult
    extended: Program
    rules_added: int
    fresh_atoms: int


def run_break(program: Program, limit: int | None = None, seed: int = 0) -> BreakResult:
    detect = run_detect(program, limit=limit, seed=seed)
    t0 = time.perf_counter()
    extended = break_symmetries(program, detect.generators)
    detect.elapsed["break"] = time.perf_counter() - t0
    return BreakResult(
        detect=detect,
        extended=extended,
        rules_added=len(extended.rules) - len(program.rules),
        fresh_atoms=extended.max_atom - program.max_atom,
    )


@dataclass
class Check:
    name: str
    passed: bool
    detail: str


@dataclass
class VerifyReport:
    instance: str
    generators: int
    models_before: int
    models_after: int
    orbits: int
    checks: list[Check]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def lines(self) -> list[str]:
        out = [
            f"instance: {self.instance}",
            f"generators: {self.generators}",
            f"models: {self.models_before} -> {self.models_after} ({self.orbits} orbits)",
        ]
        for check in self.checks:
            status = "PASS" if check.passed else "FAIL"
            out.append(f"{status} {check.name}: {check.detail}")
        out.append(f"verdict: {'PASS' if self.passed else 'FAIL'}")
        return out


def _lex_key(model: frozenset[int], atoms: list[int]) -> tuple[int, ...]:
    return tuple(1 if a in model else 0 for a in atoms)


def run_verify(
    program: Program,
    limit: int | None = None,
    seed: int = 0,
    atom_budget: int = DEFAULT_ATOM_BUDGET,
    closure_budget: int = DEFAULT_CLOSURE_BUDGET,
    instance: str = "-",
) -> VerifyReport:
    """Detect + break, then check every oracle-verifiable claim: generators
    preserve the program, the model set is symmetric under them, breaking
    only removes models, every orbit keeps its lexicographically smallest
    model, and any minimize objective keeps its optimum."""
    broken = run_break(program, limit=limit, seed=seed)
    generators = broken.detect.generators

    before = enumerate_models(program, atom_budget=atom_budget)
    after = enumerate_models(broken.extended, atom_budget=atom_budget)
    original_atoms = set(range(1, program.max_atom + 1))
    projected = [m & original_atoms for m in after]

    checks: list[Check] = []
    checks.append(
        Check(
            "generator-validity",
            broken.detect.dropped == 0,
            f"{len(generators)} generators preserve the rule multiset, "
            f"{broken.detect.dropped} dropped",
        )
    )

    before_set = set(before)
    symmetric = all(
        apply_to_model(g, m) in before_set for g in generators for m in before
    )
    checks.append(
        Check("model-set-symmetry", symmetric, "generators map stable models to stable models")
    )

    sound = all(m in before_set for m in projected)
    checks.append(
        Check(
            "soundness",
            sound,
            "models after breaking project into the original model set",
        )
    )

    closure = group_closure(generators.generators, budget=closure_budget)
    atoms = sorted({a for m in before for a in m} | set(range(2, program.max_atom + 1)))
    projected_set = set(projected)
    orbit_reps: dict[tuple, list[frozenset[int]]] = {}
    for model in before:
        rep = min(tuple(sorted(apply_to_model(g, model))) for g in closure)
        orbit_reps.setdefault(rep, []).append(model)
    covered = all(
        any(m in projected_set for m in orbit) for orbit in orbit_reps.values()
    )
    checks.append(
        Check(
            "representative-coverage",
            covered,
            f"each of {len(orbit_reps)} orbits keeps at least one model",
        )
    )
    lex_survives = all(
        min(orbit, key=lambda m: _lex_key(m, atoms)) in projected_set
        for orbit in orbit_reps.values()
    )
    checks.append(
        Check("lex-min-survives", lex_survives, "the lex-smallest model of every orbit survives")
    )

    counts_ok = len(orbit_reps) <= len(after) <= len(before)
    checks.append(
        Check(
            "model-count",
            counts_ok,
            f"{len(orbit_reps)} <= {len(after)} <= {len(before)}",
        )
    )

    if program.has_kind(MINIMIZE):
        opt_before = min((objective_values(program, m) for m in before), default=None)
        opt_after = min((objective_values(program, m) for m in projected), default=None)
        checks.append(
            Check(
                "optimum-preserved",
                opt_before == opt_after,
                f"optimum {opt_before} -> {opt_after}",
            )
        )

    return VerifyReport(
        instance=instance,
        generators=len(generators),
        models_before=len(before),
        models_after=len(after),
        orbits=len(orbit_reps),
        checks=checks,
    )


def describe_document(doc: SmodelsDocument) -> dict[str, int]:
    p = doc.program
    return {"atoms": p.max_atom, "rules": len(p.rules)}
