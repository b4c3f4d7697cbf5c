# cython: boundscheck=False, wraparound=False
"""Compiled truth-table enumeration, the hot kernel backend.

Same contract as claimgraph._ttable_py; see claimgraph.kernel for the
program encoding.
"""

from libc.stdlib cimport free, malloc

BACKEND_NAME = "compiled"


cdef inline bint _run(const int* ops, const int* args, int lo, int hi,
                      unsigned long long mask, unsigned char* stack) noexcept nogil:
    cdef int pc, op
    cdef int sp = 0
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


def find_countermodel(const int[::1] ops, const int[::1] args,
                      const int[::1] bounds, int n_atoms):
    """Scan all 2**n_atoms assignments for one where every hypothesis
    program evaluates true and the goal program (the last one) false.

    Returns the first such assignment as a bitmask (atom i true iff bit i
    set), or -1 when none exists.
    """
    cdef int nprog = bounds.shape[0] - 1
    cdef int k, maxlen = 1
    for k in range(nprog):
        if bounds[k + 1] - bounds[k] > maxlen:
            maxlen = bounds[k + 1] - bounds[k]

    cdef unsigned char* stack = <unsigned char*> malloc(maxlen)
    if stack == NULL:
        raise MemoryError()

    cdef unsigned long long mask, nmask = 1ULL << n_atoms
    cdef long long found = -1
    cdef bint all_true
    cdef const int* ops_p = &ops[0]
    cdef const int* args_p = &args[0]
    try:
        with nogil:
            for mask in range(nmask):
                all_true = True
                for k in range(nprog - 1):
                    if not _run(ops_p, args_p, bounds[k], bounds[k + 1], mask, stack):
                        all_true = False
                        break
                if all_true and not _run(ops_p, args_p, bounds[nprog - 1],
                                         bounds[nprog], mask, stack):
                    found = <long long> mask
                    break
        return found
    finally:
        free(stack)
