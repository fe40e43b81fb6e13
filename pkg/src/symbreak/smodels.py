"""Reader/writer for the numeric smodels/LPARSE program format.

Layout (whitespace-separated decimal tokens, one rule per line when written):

    rules section, terminated by a lone 0:
      type 1 basic:        1 head #lits #neg [neg atoms] [pos atoms]
      type 2 cardinality:  2 head #lits #neg bound [neg] [pos]
      type 3 choice:       3 #heads [heads] #lits #neg [neg] [pos]
      type 5 weight:       5 head bound #lits #neg [neg] [pos] [weights]
      type 6 minimize:     6 0 #lits #neg [neg] [pos] [weights]
    symbol table, lines "id name", terminated by 0
    "B+" section: atom ids, terminated by 0
    "B-" section: atom ids, terminated by 0
    model count line

Negative body atoms always precede positive ones on a rule line. Symbol
names are opaque strings running to end of line. Re-serializing an
unmodified document reproduces a token-identical file (whitespace is
normalized to single spaces/newlines).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING

from .errors import ParseError
from .program import (
    BASIC,
    CARDINALITY,
    CHOICE,
    MINIMIZE,
    WEIGHT,
    Literal,
    Program,
    Rule,
)

if TYPE_CHECKING:
    from .automorphism import Permutation


@dataclass
class SmodelsDocument:
    program: Program
    trailing: tuple[str, ...] = field(default=())


class _TokenStream:
    """Token reader that tracks the global 0-based token index and supports
    end-of-line reads for symbol names."""

    def __init__(self, text: str):
        self._lines = [line.split() for line in text.splitlines()]
        self._li = 0
        self._ti = 0
        self.index = -1  # index of the most recently returned token

    def _advance_line(self):
        while self._li < len(self._lines) and self._ti >= len(self._lines[self._li]):
            self._li += 1
            self._ti = 0

    def at_end(self) -> bool:
        self._advance_line()
        return self._li >= len(self._lines)

    def next_token(self) -> str:
        self._advance_line()
        if self._li >= len(self._lines):
            raise ParseError("truncated input", self.index + 1)
        tok = self._lines[self._li][self._ti]
        self._ti += 1
        self.index += 1
        return tok

    def next_int(self, what: str, minimum: int = 0) -> int:
        tok = self.next_token()
        try:
            value = int(tok)
        except ValueError:
            raise ParseError(f"malformed {what}: {tok!r}", self.index) from None
        if value < minimum:
            raise ParseError(f"malformed {what}: {value} < {minimum}", self.index)
        return value

    def rest_of_line(self) -> str:
        """Consume the remaining tokens of the current line."""
        if self._li >= len(self._lines):
            return ""
        rest = self._lines[self._li][self._ti :]
        self.index += len(rest)
        self._ti = len(self._lines[self._li])
        return " ".join(rest)

    def remaining(self) -> tuple[str, ...]:
        out = []
        while not self.at_end():
            out.append(self.next_token())
        return tuple(out)


def _read_body(ts: _TokenStream) -> tuple[Literal, ...]:
    nlits = ts.next_int("literal count")
    nneg = ts.next_int("negative literal count")
    if nneg > nlits:
        raise ParseError(f"#neg {nneg} exceeds #literals {nlits}", ts.index)
    negs = [ts.next_int("atom id", minimum=1) for _ in range(nneg)]
    poss = [ts.next_int("atom id", minimum=1) for _ in range(nlits - nneg)]
    return tuple([Literal(a, True) for a in negs] + [Literal(a, False) for a in poss])


def parse(text: str) -> SmodelsDocument:
    """Parse an smodels document into a Program."""
    ts = _TokenStream(text)
    rules: list[Rule] = []
    while True:
        rtype = ts.next_int("rule type")
        if rtype == 0:
            break
        if rtype == 1:
            head = ts.next_int("head atom", minimum=1)
            rules.append(Rule(BASIC, (head,), _read_body(ts)))
        elif rtype == 2:
            head = ts.next_int("head atom", minimum=1)
            nlits = ts.next_int("literal count")
            nneg = ts.next_int("negative literal count")
            if nneg > nlits:
                raise ParseError(f"#neg {nneg} exceeds #literals {nlits}", ts.index)
            bound = ts.next_int("bound")
            negs = [ts.next_int("atom id", minimum=1) for _ in range(nneg)]
            poss = [ts.next_int("atom id", minimum=1) for _ in range(nlits - nneg)]
            body = tuple([Literal(a, True) for a in negs] + [Literal(a, False) for a in poss])
            rules.append(Rule(CARDINALITY, (head,), body, bound=bound))
        elif rtype == 3:
            nheads = ts.next_int("head count", minimum=1)
            heads = tuple(ts.next_int("head atom", minimum=1) for _ in range(nheads))
            rules.append(Rule(CHOICE, heads, _read_body(ts)))
        elif rtype == 5:
            head = ts.next_int("head atom", minimum=1)
            bound = ts.next_int("bound")
            body = _read_body(ts)
            weights = tuple(ts.next_int("weight") for _ in range(len(body)))
            rules.append(Rule(WEIGHT, (head,), body, bound=bound, weights=weights))
        elif rtype == 6:
            zero = ts.next_int("minimize header")
            if zero != 0:
                raise ParseError(f"minimize statement must start '6 0', got {zero}", ts.index)
            body = _read_body(ts)
            weights = tuple(ts.next_int("weight") for _ in range(len(body)))
            rules.append(Rule(MINIMIZE, (), body, weights=weights))
        else:
            raise ParseError(f"unknown rule type {rtype}", ts.index)

    symbols: dict[int, str] = {}
    while True:
        tok = ts.next_token()
        if tok == "0":
            break
        try:
            atom = int(tok)
        except ValueError:
            raise ParseError(f"malformed symbol atom id: {tok!r}", ts.index) from None
        if atom < 1:
            raise ParseError(f"malformed symbol atom id: {atom}", ts.index)
        name = ts.rest_of_line()
        if not name:
            raise ParseError(f"symbol entry for atom {atom} has no name", ts.index)
        symbols[atom] = name

    def read_compute(header: str) -> tuple[int, ...]:
        tok = ts.next_token()
        if tok != header:
            raise ParseError(f"expected section header {header!r}, got {tok!r}", ts.index)
        atoms = []
        while True:
            a = ts.next_int("compute atom id")
            if a == 0:
                return tuple(atoms)
            atoms.append(a)

    compute_true = read_compute("B+")
    compute_false = read_compute("B-")
    model_count = ts.next_int("model count")
    trailing = ts.remaining()

    max_atom = 1
    for rule in rules:
        for a in rule.atoms():
            max_atom = max(max_atom, a)
    for a in (*symbols, *compute_true, *compute_false):
        max_atom = max(max_atom, a)

    program = Program(
        rules=rules,
        symbols=symbols,
        compute_true=compute_true,
        compute_false=compute_false,
        max_atom=max_atom,
        model_count_request=model_count,
    )
    return SmodelsDocument(program, trailing)


def _rule_tokens(rule: Rule) -> list[int]:
    negs = [l.atom for l in rule.body if l.negated]
    poss = [l.atom for l in rule.body if not l.negated]
    if rule.kind == BASIC:
        return [1, rule.heads[0], len(rule.body), len(negs), *negs, *poss]
    if rule.kind == CARDINALITY:
        return [2, rule.heads[0], len(rule.body), len(negs), rule.bound, *negs, *poss]
    if rule.kind == CHOICE:
        return [3, len(rule.heads), *rule.heads, len(rule.body), len(negs), *negs, *poss]
    # weights follow the neg-then-pos literal order
    wmap = list(zip(rule.body, rule.weights))
    weights = [w for l, w in wmap if l.negated] + [w for l, w in wmap if not l.negated]
    if rule.kind == WEIGHT:
        return [5, rule.heads[0], rule.bound, len(rule.body), len(negs), *negs, *poss, *weights]
    if rule.kind == MINIMIZE:
        return [6, 0, len(rule.body), len(negs), *negs, *poss, *weights]
    raise ValueError(f"cannot serialize rule kind {rule.kind!r}")


def rule_line(rule: Rule) -> str:
    return " ".join(str(t) for t in _rule_tokens(rule))


def write(doc: SmodelsDocument | Program) -> str:
    """Serialize a document; inverse of parse up to whitespace normalization."""
    if isinstance(doc, Program):
        doc = SmodelsDocument(doc)
    program = doc.program
    lines = [rule_line(r) for r in program.rules]
    lines.append("0")
    for atom, name in program.symbols.items():
        lines.append(f"{atom} {name}")
    lines.append("0")
    lines.append("B+")
    lines.extend(str(a) for a in program.compute_true)
    lines.append("0")
    lines.append("B-")
    lines.extend(str(a) for a in program.compute_false)
    lines.append("0")
    lines.append(str(program.model_count_request))
    lines.extend(doc.trailing)
    return "\n".join(lines) + "\n"


def render_symbolic(program: Program, perm: "Permutation") -> str:
    """Cycle notation with symbol-table names substituted where present,
    e.g. "(c2t(53,5) c2t(52,5)) (44 45)". Identity renders as ""."""
    parts = []
    for cycle in perm.cycles():
        names = (program.symbols.get(a, str(a)) for a in cycle)
        parts.append("(" + " ".join(names) + ")")
    return " ".join(parts)
