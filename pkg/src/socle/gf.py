"""Finite field arithmetic: GF(p) and GF(p^w).

Elements of GF(2^w) are w-bit integers representing polynomials over
GF(2) modulo a fixed irreducible; for odd p and w > 1 elements are
base-p digit packings modulo an irreducible found by a deterministic
search.  The default sampling field is GF(2^32) with modulus

    x^32 + x^22 + x^2 + x + 1

(a standard primitive pentanomial); it is exposed as ``GF2_32_MODULUS``
so that reports can record it.
"""

from dataclasses import dataclass
from random import Random

from .errors import DivByZero

GF2_32_MODULUS = (1 << 32) | (1 << 22) | (1 << 2) | (1 << 1) | 1


@dataclass(frozen=True)
class FieldConfig:
    """Characteristic and extension degree of the coefficient field.

    ``p`` is the characteristic of the symbolic coefficient field; ``w``
    is only used by the randomized evaluation backend, which samples
    points from GF(p^w).
    """
    p: int = 2
    w: int = 32

    def __post_init__(self):
        if self.p < 2 or any(self.p % q == 0 for q in range(2, int(self.p ** 0.5) + 1)):
            raise ValueError(f"characteristic {self.p} is not prime")
        if self.w < 1:
            raise ValueError("extension degree must be >= 1")


def _prime_divisors(w):
    return {q for q in range(2, w + 1) if w % q == 0 and all(q % r for r in range(2, q))}


# -- GF(2)[x] helpers on int-packed polynomials ------------------------------

def _gf2_poly_mod(a, b):
    db = b.bit_length() - 1
    while a and a.bit_length() - 1 >= db:
        a ^= b << (a.bit_length() - 1 - db)
    return a


def _gf2_poly_mulmod(a, b, f):
    acc = 0
    while b:
        if b & 1:
            acc ^= a
        b >>= 1
        a = _gf2_poly_mod(a << 1, f)
    return _gf2_poly_mod(acc, f)


def _gf2_poly_powmod(a, e, f):
    r = 1
    a = _gf2_poly_mod(a, f)
    while e:
        if e & 1:
            r = _gf2_poly_mulmod(r, a, f)
        a = _gf2_poly_mulmod(a, a, f)
        e >>= 1
    return r


def _gf2_poly_gcd(a, b):
    while b:
        a, b = b, _gf2_poly_mod(a, b)
    return a


def is_irreducible_gf2(f):
    """Rabin irreducibility test for f in GF(2)[x], packed as an int."""
    w = f.bit_length() - 1
    if w < 1:
        return False
    x = 2
    if _gf2_poly_powmod(x, 2 ** w, f) != _gf2_poly_mod(x, f):
        return False
    for q in _prime_divisors(w):
        h = _gf2_poly_powmod(x, 2 ** (w // q), f) ^ x
        if _gf2_poly_gcd(f, h) != 1:
            return False
    return True


# -- GF(p)[x] helpers on coefficient lists (odd p) -----------------------------

def _gfp_poly_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _gfp_poly_mod(a, f, p):
    a = list(a)
    fw = len(f) - 1
    inv_lead = pow(f[-1], p - 2, p)
    while len(_gfp_poly_trim(a)) > fw:
        coef = a[-1] * inv_lead % p
        shift = len(a) - 1 - fw
        for i in range(fw + 1):
            a[shift + i] = (a[shift + i] - coef * f[i]) % p
        a.pop()
    return a


def _gfp_poly_mulmod(a, b, f, p):
    res = [0] * (len(a) + len(b) - 1 or 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                res[i + j] = (res[i + j] + ai * bj) % p
    return _gfp_poly_mod(res, f, p)


def _gfp_poly_powmod(a, e, f, p):
    r = [1]
    a = _gfp_poly_mod(a, f, p)
    while e:
        if e & 1:
            r = _gfp_poly_mulmod(r, a, f, p)
        a = _gfp_poly_mulmod(a, a, f, p)
        e >>= 1
    return r


def _gfp_poly_gcd(a, b, p):
    a, b = _gfp_poly_trim(list(a)), _gfp_poly_trim(list(b))
    while b:
        a = _gfp_poly_mod(a, b, p)
        a, b = b, _gfp_poly_trim(a)
    return a


def _gfp_poly_sub(a, b, p):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    for i, c in enumerate(b):
        a[i] = (a[i] - c) % p
    return a


def is_irreducible_gfp(f, p):
    """Rabin irreducibility test for f in GF(p)[x] as a coefficient list."""
    w = len(f) - 1
    if w < 1:
        return False
    x = [0, 1]
    frob = _gfp_poly_powmod(x, p ** w, f, p)
    if _gfp_poly_trim(_gfp_poly_sub(frob, x, p)):
        return False
    for q in _prime_divisors(w):
        h = _gfp_poly_sub(_gfp_poly_powmod(x, p ** (w // q), f, p), x, p)
        g = _gfp_poly_gcd(f, h, p)
        if len(g) > 1:
            return False
    return True


class GF:
    """Arithmetic context for GF(p^w).

    Elements are plain ints: residues mod p when w == 1, bit-packed
    polynomials for p == 2, and base-p digit packings for odd p with
    w > 1.  Operations are methods of the context, which keeps elements
    lightweight enough for dense linear algebra.
    """

    def __init__(self, p, w=1):
        self.p = p
        self.w = w
        self.order = p ** w
        if w == 1:
            self.modulus = None
        elif p == 2:
            self.modulus = GF2_32_MODULUS if w == 32 else self._find_irreducible_gf2(w)
        else:
            self.modulus = self._find_irreducible_gfp(p, w)

    @staticmethod
    def _find_irreducible_gf2(w):
        rng = Random(0)
        while True:
            f = (1 << w) | 1 | (rng.getrandbits(w - 1) << 1)
            if is_irreducible_gf2(f):
                return f

    @staticmethod
    def _find_irreducible_gfp(p, w):
        rng = Random(0)
        while True:
            f = [rng.randrange(p) for _ in range(w)] + [1]
            if f[0] and is_irreducible_gfp(f, p):
                return tuple(f)

    # -- element arithmetic --------------------------------------------------

    def zero(self):
        return 0

    def one(self):
        return 1

    def from_int(self, c):
        """Embed an integer (prime-subfield element) into the field."""
        return c % self.p

    def add(self, a, b):
        if self.w == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        return self._digits_map(a, b, lambda x, y: (x + y) % self.p)

    def sub(self, a, b):
        if self.w == 1:
            return (a - b) % self.p
        if self.p == 2:
            return a ^ b
        return self._digits_map(a, b, lambda x, y: (x - y) % self.p)

    def neg(self, a):
        return self.sub(0, a)

    def mul(self, a, b):
        if self.w == 1:
            return a * b % self.p
        if self.p == 2:
            return self._clmul(a, b)
        ua, ub = self._unpack(a), self._unpack(b)
        return self._pack(_gfp_poly_mod(
            [sum(ua[i] * ub[k - i] for i in range(max(0, k - self.w + 1), min(k + 1, self.w))) % self.p
             for k in range(2 * self.w - 1)], list(self.modulus), self.p))

    def _clmul(self, a, b):
        acc = 0
        while b:
            if b & 1:
                acc ^= a
            b >>= 1
            a <<= 1
        return _gf2_poly_mod(acc, self.modulus)

    def inv(self, a):
        if a == 0:
            raise DivByZero("inverse of zero field element")
        return self.pow(a, self.order - 2)

    def pow(self, a, e):
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def sample(self, rng):
        if self.w == 1 or self.p == 2:
            return rng.randrange(self.order)
        return self._pack([rng.randrange(self.p) for _ in range(self.w)])

    def sample_nonzero(self, rng):
        while True:
            a = self.sample(rng)
            if a != 0:
                return a

    # -- packing helpers for odd-p extensions ----------------------------------

    def _unpack(self, a):
        digits = []
        for _ in range(self.w):
            digits.append(a % self.p)
            a //= self.p
        return digits

    def _pack(self, digits):
        a = 0
        for d in reversed(list(digits) + [0] * (self.w - len(digits))):
            a = a * self.p + d
        return a

    def _digits_map(self, a, b, op):
        return self._pack([op(x, y) for x, y in zip(self._unpack(a), self._unpack(b))])

    def modulus_text(self):
        """Human-readable modulus polynomial, recorded in reports."""
        if self.w == 1:
            return f"prime field GF({self.p})"
        if self.p == 2:
            bits = [i for i in range(self.modulus.bit_length()) if self.modulus >> i & 1]
            return " + ".join(f"x^{i}" if i > 1 else ("x" if i == 1 else "1")
                              for i in sorted(bits, reverse=True))
        terms = [f"{c}*x^{i}" if i else str(c)
                 for i, c in enumerate(self.modulus) if c]
        return " + ".join(reversed(terms))
