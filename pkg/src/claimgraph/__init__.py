"""claimgraph: relational fact-checking on a claim graph.

Users post proposition and proof messages, rate them on two independent
dimensions (agreement polarity and hotness), and query the best arguments
for or against any proposition. An embedded propositional-logic kernel
checks that proof nodes form valid derivations.
"""

from claimgraph.formula import (
    And,
    Atom,
    Formula,
    Implies,
    Not,
    Or,
    atoms,
    eval_formula,
    parse_formula,
    print_formula,
)
from claimgraph.kernel import (
    AXIOM_SCHEMAS,
    DEFAULT_ATOM_CAP,
    KERNEL_BACKEND,
    apply_modus_ponens,
    counterexample,
    entails,
    is_axiom_instance,
)

__version__ = "0.1.0"

__all__ = [
    "And",
    "Atom",
    "Formula",
    "Implies",
    "Not",
    "Or",
    "atoms",
    "eval_formula",
    "parse_formula",
    "print_formula",
    "AXIOM_SCHEMAS",
    "DEFAULT_ATOM_CAP",
    "KERNEL_BACKEND",
    "apply_modus_ponens",
    "counterexample",
    "entails",
    "is_axiom_instance",
    "__version__",
]
