"""Symmetry-breaking preprocessor for grounded logic programs.

Pipeline: parse an smodels document, encode it as a vertex-colored graph,
search color-preserving automorphisms by individualization-refinement, and
append one lexicographic constraint chain per generator. A brute-force
stable-model oracle verifies the transformation at desk scale.
"""

from .automorphism import (
    GeneratorSet,
    Permutation,
    check_group_axioms,
    compose,
    find_generators,
    group_closure,
    inverse,
)
from .errors import (
    BudgetExceededError,
    NotTightError,
    ParseError,
    UnsupportedFeatureError,
    UnsupportedGeneratorError,
)
from .graph import ColoredGraph, Coloring, build_graph, individualize, refine
from .instances import HouseSpec, PhpSpec, gen_house, gen_php
from .oracle import count_orbits, enumerate_models, is_tight
from .program import (
    FALSE_ATOM,
    Literal,
    Program,
    Rule,
    apply_permutation,
    fresh_atoms,
    programs_equal_modulo_rule_order,
)
from .sbc import SbcChain, break_symmetries, emit_chain
from .smodels import SmodelsDocument, parse, render_symbolic, write

__version__ = "0.1.0"

__all__ = [
    "BudgetExceededError",
    "ColoredGraph",
    "Coloring",
    "FALSE_ATOM",
    "GeneratorSet",
    "HouseSpec",
    "Literal",
    "NotTightError",
    "ParseError",
    "Permutation",
    "PhpSpec",
    "Program",
    "Rule",
    "SbcChain",
    "SmodelsDocument",
    "UnsupportedFeatureError",
    "UnsupportedGeneratorError",
    "apply_permutation",
    "break_symmetries",
    "build_graph",
    "check_group_axioms",
    "compose",
    "count_orbits",
    "emit_chain",
    "enumerate_models",
    "find_generators",
    "fresh_atoms",
    "gen_house",
    "gen_php",
    "group_closure",
    "individualize",
    "inverse",
    "is_tight",
    "parse",
    "programs_equal_modulo_rule_order",
    "refine",
    "render_symbolic",
    "write",
]
