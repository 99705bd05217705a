"""Sparse multivariate polynomials over a prime field GF(p).

A variable is a hashable tuple: ``('a', i, j)`` for the generic matrix
entry in row i / column j, ``('x', j)`` for the ring variable attached
to vertex j.  A monomial is a tuple of ``(var, exp)`` pairs sorted by
variable, with no zero exponents; a polynomial is an immutable mapping
from monomials to nonzero coefficients in GF(p).

The lexicographic order used throughout ranks a[1,1] > a[1,2] > ... >
a[2,1] > ..., i.e. smaller variable tuples have higher priority.
"""

import heapq
from itertools import permutations

from .errors import ZeroPolynomial

ONE = ()  # the empty monomial


def avar(i, j):
    return ('a', i, j)


def xvar(j):
    return ('x', j)


def monomial_mul(m1, m2):
    """Merge two sorted (var, exp) tuples."""
    if not m1:
        return m2
    if not m2:
        return m1
    out = []
    i = j = 0
    while i < len(m1) and j < len(m2):
        v1, e1 = m1[i]
        v2, e2 = m2[j]
        if v1 == v2:
            out.append((v1, e1 + e2))
            i += 1
            j += 1
        elif v1 < v2:
            out.append(m1[i])
            i += 1
        else:
            out.append(m2[j])
            j += 1
    out.extend(m1[i:])
    out.extend(m2[j:])
    return tuple(out)


def monomial_div(m1, m2):
    """m1 / m2, or None if m2 does not divide m1."""
    rest = dict(m1)
    for v, e in m2:
        have = rest.get(v, 0)
        if have < e:
            return None
        if have == e:
            del rest[v]
        else:
            rest[v] = have - e
    return tuple(sorted(rest.items()))


def monomial_degree(m):
    return sum(e for _, e in m)


class MonomialOrder:
    """Lexicographic monomial order with a configurable variable priority.

    ``priority`` maps a variable to a sortable key; smaller keys rank
    higher.  The default (identity) gives a[1,1] > a[1,2] > ... > a[2,1]
    > ... as in the dimension-1 nonvanishing argument.
    """

    _SENTINEL = (('~',), 0)

    def __init__(self, priority=None):
        self.kind = 'lex'
        self.priority = priority

    def sort_key(self, m):
        """Key under which the largest monomial is the smallest tuple."""
        if self.priority is None:
            items = m
        else:
            items = sorted(((self.priority(v), e) for v, e in m))
        return tuple((v, -e) for v, e in items) + (self._SENTINEL,)

    def greater(self, m1, m2):
        return self.sort_key(m1) < self.sort_key(m2)


LEX = MonomialOrder()


class Polynomial:
    """Immutable sparse polynomial over GF(p)."""

    __slots__ = ('terms', 'p', '_hash')

    def __init__(self, terms, p, _normalized=False):
        if not _normalized:
            clean = {}
            for m, c in terms.items():
                c %= p
                if c:
                    clean[m] = c
            terms = clean
        self.terms = terms
        self.p = p
        self._hash = None

    # -- constructors ----------------------------------------------------------

    @classmethod
    def zero(cls, p):
        return cls({}, p, _normalized=True)

    @classmethod
    def constant(cls, c, p):
        return cls({ONE: c % p} if c % p else {}, p, _normalized=True)

    @classmethod
    def variable(cls, v, p):
        return cls({((v, 1),): 1}, p, _normalized=True)

    @classmethod
    def from_items(cls, items, p):
        acc = {}
        for m, c in items:
            acc[m] = (acc.get(m, 0) + c) % p
        return cls({m: c for m, c in acc.items() if c}, p, _normalized=True)

    # -- basic queries ------------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_one(self):
        return self.terms == {ONE: 1}

    def constant_value(self):
        if not self.terms:
            return 0
        if len(self.terms) == 1 and ONE in self.terms:
            return self.terms[ONE]
        return None

    def total_degree(self):
        return max((monomial_degree(m) for m in self.terms), default=0)

    def variables(self):
        seen = set()
        for m in self.terms:
            for v, _ in m:
                seen.add(v)
        return seen

    def __eq__(self, other):
        return (isinstance(other, Polynomial) and self.p == other.p
                and self.terms == other.terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.p, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    # -- ring operations -------------------------------------------------------------

    def __add__(self, other):
        self._check(other)
        big, small = (self.terms, other.terms) if len(self.terms) >= len(other.terms) \
            else (other.terms, self.terms)
        out = dict(big)
        p = self.p
        for m, c in small.items():
            s = (out.get(m, 0) + c) % p
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial(out, p, _normalized=True)

    def __neg__(self):
        p = self.p
        if p == 2:
            return self
        return Polynomial({m: p - c for m, c in self.terms.items()}, p, _normalized=True)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        p = self.p
        if not self.terms or not other.terms:
            return Polynomial.zero(p)
        big, small = (self.terms, other.terms) if len(self.terms) >= len(other.terms) \
            else (other.terms, self.terms)
        out = {}
        for m2, c2 in small.items():
            for m1, c1 in big.items():
                m = monomial_mul(m1, m2)
                s = (out.get(m, 0) + c1 * c2) % p
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Polynomial(out, p, _normalized=True)

    def scale(self, c):
        c %= self.p
        if c == 0:
            return Polynomial.zero(self.p)
        if c == 1:
            return self
        p = self.p
        return Polynomial({m: co * c % p for m, co in self.terms.items()}, p, _normalized=True)

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative exponent")
        p = self.p
        # freshman's dream: p-th power is termwise in characteristic p
        result = Polynomial.constant(1, p)
        base = self
        while e:
            while e % p == 0 and e:
                base = base._frobenius()
                e //= p
            if e & 1:
                result = result * base
            base2 = base * base if e > 1 else base
            base = base2
            e >>= 1
        return result

    def _frobenius(self):
        p = self.p
        return Polynomial(
            {tuple((v, e * p) for v, e in m): pow(c, p, p) for m, c in self.terms.items()},
            p, _normalized=True)

    def _check(self, other):
        if self.p != other.p:
            raise ValueError("mixed characteristics")

    # -- calculus and substitution ---------------------------------------------------

    def partial_derivative(self, v):
        """Formal derivative; exponents divisible by p vanish."""
        p = self.p
        out = {}
        for m, c in self.terms.items():
            for idx, (var, e) in enumerate(m):
                if var == v:
                    coef = c * e % p
                    if coef:
                        if e == 1:
                            m2 = m[:idx] + m[idx + 1:]
                        else:
                            m2 = m[:idx] + ((var, e - 1),) + m[idx + 1:]
                        s = (out.get(m2, 0) + coef) % p
                        if s:
                            out[m2] = s
                        else:
                            del out[m2]
                    break
        return Polynomial(out, p, _normalized=True)

    def substitute(self, assignment):
        """Substitute prime-field scalars for some variables."""
        p = self.p
        out = {}
        for m, c in self.terms.items():
            kept = []
            for var, e in m:
                if var in assignment:
                    c = c * pow(assignment[var] % p, e, p) % p
                    if c == 0:
                        break
                else:
                    kept.append((var, e))
            if c:
                m2 = tuple(kept)
                s = (out.get(m2, 0) + c) % p
                if s:
                    out[m2] = s
                else:
                    del out[m2]
        return Polynomial(out, p, _normalized=True)

    def evaluate(self, point, gf):
        """Exact evaluation at a point with values in the field ``gf``."""
        acc = gf.zero()
        powers = {}
        for m, c in self.terms.items():
            t = gf.from_int(c)
            for var, e in m:
                key = (var, e)
                pw = powers.get(key)
                if pw is None:
                    pw = gf.pow(point[var], e)
                    powers[key] = pw
                t = gf.mul(t, pw)
            acc = gf.add(acc, t)
        return acc

    # -- order-dependent operations ------------------------------------------------------

    def initial_monomial(self, order=LEX):
        if not self.terms:
            raise ZeroPolynomial("initial monomial of the zero polynomial")
        return min(self.terms, key=order.sort_key)

    def leading_term(self, order=LEX):
        m = self.initial_monomial(order)
        return m, self.terms[m]

    def divide_exact(self, divisor, order=LEX):
        """Quotient self/divisor if the division is exact, else None."""
        if divisor.is_zero():
            raise ZeroPolynomial("division by the zero polynomial")
        if self.is_zero():
            return self
        p = self.p
        c = divisor.constant_value()
        if c is not None:
            return self.scale(pow(c, p - 2, p))
        dm, dc = divisor.leading_term(order)
        dc_inv = pow(dc, p - 2, p)
        rem = dict(self.terms)
        # lazy max-heap over the remainder's monomials
        heap = [order.sort_key(m) for m in rem]
        keyed = {order.sort_key(m): m for m in rem}
        heapq.heapify(heap)
        quot = {}
        div_items = list(divisor.terms.items())
        while rem:
            while heap:
                k = heap[0]
                m = keyed[k]
                if m in rem:
                    break
                heapq.heappop(heap)
            lead = m
            q = monomial_div(lead, dm)
            if q is None:
                return None
            qc = rem[lead] * dc_inv % p
            quot[q] = qc
            for m2, c2 in div_items:
                mm = monomial_mul(q, m2)
                s = (rem.get(mm, 0) - qc * c2) % p
                if s:
                    if mm not in rem:
                        k2 = order.sort_key(mm)
                        keyed[k2] = mm
                        heapq.heappush(heap, k2)
                    rem[mm] = s
                else:
                    rem.pop(mm, None)
        return Polynomial(quot, p, _normalized=True)

    # -- formatting ------------------------------------------------------------------------

    def text(self, order=LEX):
        """Deterministic text form, terms sorted by the active order."""
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=order.sort_key):
            c = self.terms[m]
            factors = [str(c)] if (c != 1 or not m) else []
            for var, e in m:
                if var[0] == 'a':
                    s = f"a[{var[1]},{var[2]}]"
                else:
                    s = f"x[{var[1]}]"
                if e > 1:
                    s += f"^{e}"
                factors.append(s)
            parts.append("*".join(factors))
        return " + ".join(parts)

    def __repr__(self):
        body = self.text()
        if len(body) > 120:
            body = body[:117] + "..."
        return f"Poly<GF({self.p})>({body})"


def det_poly_matrix(entries, cutoff=4):
    """Exact determinant of a square matrix of Polynomials.

    Cofactor expansion up to ``cutoff``; above that, fraction-free
    Bareiss elimination (all interior divisions are exact).
    """
    size = len(entries)
    for row in entries:
        if len(row) != size:
            raise ValueError("matrix is not square")
    if size == 0:
        raise ValueError("empty matrix")
    p = entries[0][0].p
    if size <= cutoff:
        return _det_cofactor(entries, p)
    return _det_bareiss(entries, p)


def _det_cofactor(entries, p):
    size = len(entries)
    if size == 1:
        return entries[0][0]
    if size == 2:
        return entries[0][0] * entries[1][1] - entries[0][1] * entries[1][0]
    acc = Polynomial.zero(p)
    for perm in permutations(range(size)):
        sign = _perm_sign(perm)
        term = Polynomial.constant(sign, p)
        for i, j in enumerate(perm):
            term = term * entries[i][j]
            if term.is_zero():
                break
        acc = acc + term
    return acc


def _det_bareiss(entries, p):
    n = len(entries)
    m = [row[:] for row in entries]
    sign = 1
    prev = Polynomial.constant(1, p)
    for k in range(n - 1):
        if m[k][k].is_zero():
            for r in range(k + 1, n):
                if not m[r][k].is_zero():
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return Polynomial.zero(p)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[k][k] * m[i][j] - m[i][k] * m[k][j]
                q = num.divide_exact(prev)
                assert q is not None, "Bareiss division must be exact"
                m[i][j] = q
        prev = m[k][k]
    return m[n - 1][n - 1].scale(sign)


def _perm_sign(perm):
    sign = 1
    seen = [False] * len(perm)
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        i = start
        while not seen[i]:
            seen[i] = True
            i = perm[i]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def perm_sign_of_sequence(seq):
    """Sign of the permutation sorting ``seq`` ascending; 0 on repeats."""
    if len(set(seq)) != len(seq):
        return 0
    order = sorted(range(len(seq)), key=lambda i: seq[i])
    return _perm_sign(order)
