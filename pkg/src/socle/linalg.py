"""Dense linear algebra over GF(p^w) on numpy arrays.

The characteristic-2 path packs field elements into uint64 words and
eliminates whole blocks per pivot with shift-and-mask carry-less
multiplication, which keeps the randomized rank backend fast enough for
the corpus.  The odd-p path is plain modular arithmetic on int64.
"""

import numpy as np


def linalg_for(gf):
    return GF2wLinalg(gf) if gf.p == 2 else GFpLinalg(gf)


class GF2wLinalg:
    def __init__(self, gf):
        self.gf = gf
        self.w = gf.w
        self.mask = np.uint64((1 << gf.w) - 1)
        g = (gf.modulus if gf.w > 1 else 0)
        if gf.w > 1:
            g ^= 1 << gf.w
        self.gbits = [k for k in range(max(g.bit_length(), 1)) if g >> k & 1]

    def matrix(self, rows):
        if not rows:
            return np.zeros((0, 0), dtype=np.uint64)
        return np.array(rows, dtype=np.uint64)

    def _fold(self, A):
        if self.w == 1:
            return A & np.uint64(1)
        w = np.uint64(self.w)
        while True:
            hi = A >> w
            if not hi.any():
                return A
            A = A & self.mask
            for k in self.gbits:
                A = A ^ (hi << np.uint64(k))

    def _scalar_vec(self, s, vec):
        acc = np.zeros_like(vec)
        k = 0
        while s:
            if s & 1:
                acc ^= vec << np.uint64(k)
            s >>= 1
            k += 1
        return self._fold(acc)

    def _axpy(self, M, factors, row):
        """M[i] ^= factors[i] * row for all rows, in place."""
        acc = np.zeros_like(M)
        for k in range(self.w):
            sel = ((factors >> np.uint64(k)) & np.uint64(1)).astype(bool)
            if sel.any():
                acc[sel] ^= row << np.uint64(k)
        M ^= self._fold(acc)

    def rref(self, M):
        """Reduced row echelon form; returns (R, pivot_columns)."""
        M = M.astype(np.uint64, copy=True)
        rows, cols = M.shape
        pivots = []
        r = 0
        for c in range(cols):
            if r == rows:
                break
            nz = np.flatnonzero(M[r:, c])
            if nz.size == 0:
                continue
            i = r + int(nz[0])
            if i != r:
                M[[r, i]] = M[[i, r]]
            piv = int(M[r, c])
            if piv != 1:
                M[r] = self._scalar_vec(self.gf.inv(piv), M[r])
            factors = M[:, c].copy()
            factors[r] = 0
            if factors.any():
                self._axpy(M, factors, M[r])
            pivots.append(c)
            r += 1
        return M[:r], pivots

    def rank(self, M):
        if M.size == 0:
            return 0
        return len(self.rref(M)[1])

    def reduce_rows(self, V, R, pivots):
        """Eliminate the span of R (in rref with ``pivots``) from rows V."""
        V = V.astype(np.uint64, copy=True)
        for idx, c in enumerate(pivots):
            factors = V[:, c].copy()
            if factors.any():
                self._axpy(V, factors, R[idx])
        return V


class GFpLinalg:
    def __init__(self, gf):
        assert gf.w == 1, "odd-characteristic backend supports prime fields only"
        self.gf = gf
        self.p = gf.p

    def matrix(self, rows):
        if not rows:
            return np.zeros((0, 0), dtype=np.int64)
        return np.array(rows, dtype=np.int64) % self.p

    def rref(self, M):
        M = M.astype(np.int64, copy=True) % self.p
        rows, cols = M.shape
        pivots = []
        r = 0
        for c in range(cols):
            if r == rows:
                break
            nz = np.flatnonzero(M[r:, c])
            if nz.size == 0:
                continue
            i = r + int(nz[0])
            if i != r:
                M[[r, i]] = M[[i, r]]
            inv = pow(int(M[r, c]), self.p - 2, self.p)
            M[r] = M[r] * inv % self.p
            factors = M[:, c].copy()
            factors[r] = 0
            if factors.any():
                M -= np.outer(factors, M[r])
                M %= self.p
            pivots.append(c)
            r += 1
        return M[:r], pivots

    def rank(self, M):
        if M.size == 0:
            return 0
        return len(self.rref(M)[1])

    def reduce_rows(self, V, R, pivots):
        V = V.astype(np.int64, copy=True) % self.p
        for idx, c in enumerate(pivots):
            factors = V[:, c].copy()
            if factors.any():
                V -= np.outer(factors, R[idx])
                V %= self.p
        return V
