"""Bulk GF(2) polynomial kernel on packed numpy arrays.

Products of several generic determinants (the character-2 minor
identities) are far too large for dict-based arithmetic, so this module
packs monomials into numpy words: every variable gets a 4-bit exponent
field, 16 fields per uint64 word.  A polynomial over GF(2) is the set
of its monomials, stored as an (N, W) uint64 array; addition is
symmetric difference and multiplication is vectorized field-wise
addition of exponents followed by a parity-deduplication sort.

The packing is only valid while every exponent stays below 16; callers
see an assertion failure otherwise.
"""

import numpy as np

from .polynomials import Polynomial

_FIELDS_PER_WORD = 16
_FIELD_BITS = 4
_FIELD_MAX = 15


class VarTable:
    """Fixed variable-to-slot assignment for one packed computation."""

    def __init__(self, variables):
        self.vars = tuple(sorted(variables))
        self.slot = {v: i for i, v in enumerate(self.vars)}
        self.words = max(1, -(-len(self.vars) // _FIELDS_PER_WORD))

    def pack(self, poly):
        arr = np.zeros((len(poly.terms), self.words), dtype=np.uint64)
        for r, m in enumerate(sorted(poly.terms)):
            assert poly.terms[m] == 1, "bulk kernel is GF(2)-only"
            for v, e in m:
                assert e <= _FIELD_MAX, "exponent overflows 4-bit packing"
                s = self.slot[v]
                arr[r, s // _FIELDS_PER_WORD] |= np.uint64(
                    e << (_FIELD_BITS * (s % _FIELDS_PER_WORD)))
        return arr

    def unpack(self, arr):
        terms = {}
        shifts = [(s, np.uint64(_FIELD_BITS * (s % _FIELDS_PER_WORD)))
                  for s in range(len(self.vars))]
        mask = np.uint64(_FIELD_MAX)
        for row in arr:
            mono = []
            for s, shift in shifts:
                e = int((row[s // _FIELDS_PER_WORD] >> shift) & mask)
                if e:
                    mono.append((self.vars[s], e))
            terms[tuple(mono)] = 1
        return Polynomial(terms, 2, _normalized=True)

    def field_bounds(self, arr):
        """Per-variable upper bound on exponents (bitwise OR over rows)."""
        if len(arr) == 0:
            return [0] * len(self.vars)
        folded = np.bitwise_or.reduce(arr, axis=0)
        out = []
        for s in range(len(self.vars)):
            shift = np.uint64(_FIELD_BITS * (s % _FIELDS_PER_WORD))
            out.append(int((folded[s // _FIELDS_PER_WORD] >> shift) & np.uint64(_FIELD_MAX)))
        return out

    def empty(self):
        return np.zeros((0, self.words), dtype=np.uint64)

    def one(self):
        return np.zeros((1, self.words), dtype=np.uint64)

    def derivative(self, arr, v):
        """d/dv over GF(2): keep odd exponents, decrement them."""
        s = self.slot[v]
        w = s // _FIELDS_PER_WORD
        shift = np.uint64(_FIELD_BITS * (s % _FIELDS_PER_WORD))
        odd = ((arr[:, w] >> shift) & np.uint64(1)).astype(bool)
        out = arr[odd].copy()
        out[:, w] -= np.uint64(1) << shift
        return out

    def frobenius_square(self, arr):
        bounds = self.field_bounds(arr)
        assert all(b <= 7 for b in bounds), "squaring overflows 4-bit packing"
        return arr << np.uint64(1)


def dedup_parity(arr):
    """Sort rows and keep those with odd multiplicity (GF(2) reduction)."""
    if len(arr) <= 1:
        return arr
    order = np.lexsort(arr.T[::-1])
    arr = arr[order]
    boundary = np.empty(len(arr), dtype=bool)
    boundary[0] = True
    np.any(arr[1:] != arr[:-1], axis=1, out=boundary[1:])
    starts = np.flatnonzero(boundary)
    ends = np.append(starts[1:], len(arr))
    odd = ((ends - starts) & 1).astype(bool)
    return arr[starts[odd]]


def add_arrays(a, b):
    if len(a) == 0:
        return b
    if len(b) == 0:
        return a
    return dedup_parity(np.concatenate([a, b]))


def mul_arrays(table, a, b, check=True):
    """Product of two packed GF(2) polynomials."""
    if len(a) == 0 or len(b) == 0:
        return table.empty()
    if check:
        ba = table.field_bounds(a)
        bb = table.field_bounds(b)
        assert all(x + y <= _FIELD_MAX for x, y in zip(ba, bb)), \
            "product overflows 4-bit packing"
    if len(a) < len(b):
        a, b = b, a
    # chunk the big side so the raw cross product stays within memory
    chunk = max(1, 8_000_000 // max(1, len(b)))
    pieces = []
    for lo in range(0, len(a), chunk):
        block = a[lo:lo + chunk, None, :] + b[None, :, :]
        pieces.append(dedup_parity(block.reshape(-1, table.words)))
    acc = pieces[0]
    for piece in pieces[1:]:
        acc = add_arrays(acc, piece)
    return acc


def product(table, arrays):
    acc = table.one()
    for arr in sorted(arrays, key=len):
        acc = mul_arrays(table, acc, arr)
        if len(acc) == 0:
            return acc
    return acc


def equal(a, b):
    a, b = dedup_parity(a), dedup_parity(b)
    return a.shape == b.shape and bool(np.array_equal(a, b))


def pack_factored(table, polys):
    """Pack and multiply a list of dict polynomials."""
    return product(table, [table.pack(f) for f in polys])


def bulk_multiply(polys):
    """Multiply dict polynomials through the packed kernel."""
    variables = set()
    for f in polys:
        variables |= f.variables()
    table = VarTable(variables)
    return table.unpack(pack_factored(table, polys))
