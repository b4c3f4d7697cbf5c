"""Entailment backend shootout: compiled extension vs pure Python.

Both backends receive identical postfix programs and scan the same
2**n assignment space, so the timing difference is the interpreter
overhead alone. Run from the repository root:

    python3 benchmarks/bench_entailment.py [--atoms 8,12,14,16] [--cases 40]
"""

import argparse
import random
import statistics
import time
from array import array

from claimgraph import _ttable_py
from claimgraph.formula import atoms
from claimgraph.gen import atom_alphabet, random_formula
from claimgraph.kernel import _compile_into

try:
    from claimgraph import _ttable
except ImportError:
    _ttable = None


def build_case(rng, n_atoms):
    """One tautology-shaped problem: hypotheses plus a goal, compiled."""
    alphabet = atom_alphabet(n_atoms)
    hyps = [random_formula(rng, alphabet, max_depth=4) for _ in range(3)]
    goal = random_formula(rng, alphabet, max_depth=4)
    names = set(atoms(goal))
    for h in hyps:
        names |= atoms(h)
    # pad so the scan really covers 2**n_atoms rows
    for name in alphabet:
        names.add(name)
    ordered = sorted(names)
    atom_index = {name: i for i, name in enumerate(ordered)}
    ops = array("i")
    args = array("i")
    bounds = array("i", [0])
    for f in hyps + [goal]:
        _compile_into(f, atom_index, ops, args)
        bounds.append(len(ops))
    return ops, args, bounds, len(ordered)


def time_backend(backend, cases):
    start = time.perf_counter()
    masks = [backend.find_countermodel(*case) for case in cases]
    return time.perf_counter() - start, masks


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--atoms", default="8,12,14,16",
                        help="comma-separated atom counts to sweep")
    parser.add_argument("--cases", type=int, default=40,
                        help="problems per atom count")
    parser.add_argument("--seed", type=int, default=1)
    ns = parser.parse_args()

    if _ttable is None:
        print("compiled backend not built; showing pure-Python numbers only")

    sizes = [int(x) for x in ns.atoms.split(",")]
    header = f"{'atoms':>5} {'rows':>8} {'pure (s)':>10}"
    if _ttable is not None:
        header += f" {'compiled (s)':>13} {'speedup':>8}"
    print(header)

    for n_atoms in sizes:
        rng = random.Random(ns.seed)
        cases = [build_case(rng, n_atoms) for _ in range(ns.cases)]
        pure_time, pure_masks = time_backend(_ttable_py, cases)
        row = f"{n_atoms:>5} {2 ** n_atoms:>8} {pure_time:>10.3f}"
        if _ttable is not None:
            fast_time, fast_masks = time_backend(_ttable, cases)
            assert fast_masks == pure_masks, "backends disagree"
            row += f" {fast_time:>13.3f} {pure_time / fast_time:>7.1f}x"
        print(row)

    if _ttable is not None:
        print("\nbackends agreed on every countermodel mask")


if __name__ == "__main__":
    main()
