"""Pure-Python truth-table enumeration, the fallback kernel backend.

Same contract as the compiled module ``claimgraph._ttable``; see
``claimgraph.kernel`` for the program encoding.
"""

from __future__ import annotations

BACKEND_NAME = "python"


def find_countermodel(ops, args, bounds, n_atoms: int) -> int:
    """Scan all 2**n_atoms assignments for one where every hypothesis
    program evaluates true and the goal program (the last one) false.

    Returns the first such assignment as a bitmask (atom i true iff bit i
    set), or -1 when none exists.
    """
    nprog = len(bounds) - 1
    maxlen = 1
    for k in range(nprog):
        maxlen = max(maxlen, bounds[k + 1] - bounds[k])
    stack = [0] * maxlen

    def run(lo: int, hi: int, mask: int) -> int:
        sp = 0
        for pc in range(lo, hi):
            op = ops[pc]
            if op == 0:  # load atom
                stack[sp] = (mask >> args[pc]) & 1
                sp += 1
            elif op == 1:  # not
                stack[sp - 1] ^= 1
            elif op == 2:  # and
                sp -= 1
                stack[sp - 1] &= stack[sp]
            elif op == 3:  # or
                sp -= 1
                stack[sp - 1] |= stack[sp]
            else:  # implies
                sp -= 1
                stack[sp - 1] = (stack[sp - 1] ^ 1) | stack[sp]
        return stack[0]

    for mask in range(1 << n_atoms):
        for k in range(nprog - 1):
            if not run(bounds[k], bounds[k + 1], mask):
                break
        else:
            if not run(bounds[nprog - 1], bounds[nprog], mask):
                return mask
    return -1
