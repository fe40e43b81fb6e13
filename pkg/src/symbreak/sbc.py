"""Lexicographic symmetry-breaking constraint chains.

For a generator made of transpositions (x_1,y_1)..(x_k,y_k) with x_i < y_i
and pairs sorted by x, the chain forbids assignments whose value vector over
the x positions is lexicographically greater than over the y positions: a
head constraint on the first pair, fresh chain atoms cp_2..cp_k, two defining
rules per link and two propagation rules per inner link. The emitted numeric
rules match the machine-checked encoding (the propagation rules for cp_i
carry the literals of pair i-1).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .automorphism import GeneratorSet, Permutation
from .errors import UnsupportedGeneratorError
from .program import BASIC, FALSE_ATOM, Literal, Program, Rule, fresh_atoms


@dataclass
class SbcChain:
    pairs: list[tuple[int, int]]
    chain_atoms: list[int]
    rules: list[Rule]


def _constraint(*body: Literal) -> Rule:
    return Rule(BASIC, (FALSE_ATOM,), tuple(body))


def _derive(head: int, *body: Literal) -> Rule:
    return Rule(BASIC, (head,), tuple(body))


def emit_chain(program: Program, generator: Permutation) -> SbcChain:
    """Build the constraint chain for one generator, allocating its fresh
    chain atoms from the program. The generator must fix atom 1, stay within
    the program's atom range, and consist of 2-cycles only."""
    if generator.is_identity():
        raise UnsupportedGeneratorError("cannot break symmetries of the identity permutation")
    if generator(FALSE_ATOM) != FALSE_ATOM:
        raise UnsupportedGeneratorError("generator moves the reserved falsity atom 1")
    cycles = generator.cycles()
    for cycle in cycles:
        if len(cycle) != 2:
            raise UnsupportedGeneratorError(
                f"generator has a cycle of length {len(cycle)}; only 2-cycles are supported"
            )
    for a in generator.moved():
        if not 1 <= a <= program.max_atom:
            raise ValueError(f"generator moves atom {a} outside 1..{program.max_atom}")

    pairs = sorted((min(c), max(c)) for c in cycles)
    k = len(pairs)
    chain_atoms = fresh_atoms(program, k - 1)
    # chain atom for position i (2-based): cp[i] = chain_atoms[i - 2]
    x1, y1 = pairs[0]
    rules = [_constraint(Literal(y1, True), Literal(x1, False))]
    if k > 1:
        rules.append(_constraint(Literal(chain_atoms[0], False)))
    for i in range(2, k + 1):
        x, y = pairs[i - 1]
        px, py = pairs[i - 2]
        cp = chain_atoms[i - 2]
        rules.append(_derive(cp, Literal(y, True), Literal(x, False), Literal(px, False)))
        rules.append(_derive(cp, Literal(py, True), Literal(y, True), Literal(x, False)))
        if i < k:
            cp_next = chain_atoms[i - 1]
            rules.append(_derive(cp, Literal(px, False), Literal(cp_next, False)))
            rules.append(_derive(cp, Literal(py, True), Literal(cp_next, False)))
    return SbcChain(pairs, chain_atoms, rules)


def break_symmetries(program: Program, generators: GeneratorSet | Iterable[Permutation]) -> Program:
    """Append one constraint chain per generator; the original rules stay
    first and untouched, fresh-atom allocation is threaded across chains."""
    if isinstance(generators, GeneratorSet):
        generators = generators.generators
    extended = program.copy()
    for index, generator in enumerate(generators):
        try:
            chain = emit_chain(extended, generator)
        except UnsupportedGeneratorError as exc:
            raise UnsupportedGeneratorError(f"generator {index + 1}: {exc}") from None
        extended.rules.extend(chain.rules)
    return extended
