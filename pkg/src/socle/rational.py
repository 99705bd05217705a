"""Rational functions with factored bracket bookkeeping.

Every denominator produced by the socle formulas is a product of
bracket determinants, so fractions carry their numerator and
denominator as multisets of polynomial factors.  Multiplication and
division cancel shared factors syntactically; addition expands the
cross numerators and then removes denominator factors again by trial
exact division.  No multivariate gcd is ever computed.

Factors are stored monic with respect to the ambient lexicographic
order, with the extracted scalars collected in a unit; this makes
factors that differ only by sign cancel syntactically in odd
characteristic.
"""

from .errors import DenominatorVanished, DivByZero
from .polynomials import LEX, Polynomial

# registry of display names for interned factors (bracket determinants)
FACTOR_NAMES = {}


def _poly_sort_key(f):
    return (f.total_degree(), len(f.terms), LEX.sort_key(f.initial_monomial()),
            tuple(sorted(f.terms.items())))


class FactoredPoly:
    """unit * product(factor^exp) with monic polynomial factors."""

    __slots__ = ('p', 'unit', 'factors', '_expanded')

    def __init__(self, p, unit, factors, _expanded=None):
        self.p = p
        self.unit = unit % p
        self.factors = factors if self.unit else {}
        self._expanded = _expanded

    @classmethod
    def one(cls, p):
        return cls(p, 1, {})

    @classmethod
    def zero(cls, p):
        return cls(p, 0, {})

    @classmethod
    def scalar(cls, c, p):
        return cls(p, c, {})

    @classmethod
    def from_poly(cls, poly, exp=1):
        p = poly.p
        if poly.is_zero():
            return cls.zero(p)
        c = poly.constant_value()
        if c is not None:
            return cls(p, pow(c, exp, p), {})
        lead = poly.terms[poly.initial_monomial()]
        if lead != 1:
            poly = poly.scale(pow(lead, p - 2, p))
        return cls(p, pow(lead, exp, p), {poly: exp},
                   _expanded=poly if exp == 1 and lead == 1 else None)

    def is_zero(self):
        return self.unit == 0

    def is_one(self):
        return self.unit == 1 and not self.factors

    def __mul__(self, other):
        if self.unit == 0 or other.unit == 0:
            return FactoredPoly.zero(self.p)
        factors = dict(self.factors)
        for f, e in other.factors.items():
            factors[f] = factors.get(f, 0) + e
        return FactoredPoly(self.p, self.unit * other.unit, factors)

    def scale(self, c):
        return FactoredPoly(self.p, self.unit * c, self.factors, self._expanded if c % self.p == 1 else None)

    def pow_int(self, k):
        if k == 0:
            return FactoredPoly.one(self.p)
        return FactoredPoly(self.p, pow(self.unit, k, self.p),
                            {f: e * k for f, e in self.factors.items()})

    def total_degree(self):
        return sum(f.total_degree() * e for f, e in self.factors.items())

    def expand(self):
        if self._expanded is None:
            parts = []
            for f, e in self.factors.items():
                parts.extend([f] * e)
            parts.sort(key=lambda f: len(f.terms))
            if self.p == 2 and parts and _estimated_size(parts) > 20000:
                from .gf2bulk import bulk_multiply
                acc = bulk_multiply(parts).scale(self.unit)
            else:
                acc = Polynomial.constant(self.unit, self.p)
                for f in parts:
                    acc = acc * f
            self._expanded = acc
        return self._expanded

    def evaluate(self, point, gf):
        acc = gf.from_int(self.unit)
        for f, e in self.factors.items():
            acc = gf.mul(acc, gf.pow(f.evaluate(point, gf), e))
        return acc

    def text(self):
        if self.unit == 0:
            return "0"
        parts = []
        if self.unit != 1 or not self.factors:
            parts.append(str(self.unit))
        for f in sorted(self.factors, key=_poly_sort_key):
            e = self.factors[f]
            name = FACTOR_NAMES.get(f) or "(" + f.text() + ")"
            parts.append(name if e == 1 else f"{name}^{e}")
        return "*".join(parts)

    def __eq__(self, other):
        return (isinstance(other, FactoredPoly) and self.p == other.p
                and self.unit == other.unit and self.factors == other.factors)

    def __hash__(self):
        return hash((self.p, self.unit, frozenset(self.factors.items())))


def _estimated_size(parts):
    est = 1
    for f in parts:
        est *= len(f.terms)
        if est > 10 ** 9:
            break
    return est


def _cancel(a, b):
    """Remove factors shared by two FactoredPolys (syntactic gcd)."""
    if not a.factors or not b.factors:
        return a, b
    fa, fb = dict(a.factors), dict(b.factors)
    touched = False
    for f in list(fa):
        if f in fb:
            c = min(fa[f], fb[f])
            touched = True
            for d in (fa, fb):
                if d[f] == c:
                    del d[f]
                else:
                    d[f] -= c
    if not touched:
        return a, b
    return (FactoredPoly(a.p, a.unit, fa), FactoredPoly(b.p, b.unit, fb))


def _common_split(a, b):
    """(common, a', b') with a = common*a', b = common*b' syntactically."""
    fa, fb = dict(a.factors), dict(b.factors)
    common = {}
    for f in list(fa):
        if f in fb:
            c = min(fa[f], fb[f])
            common[f] = c
            for d in (fa, fb):
                if d[f] == c:
                    del d[f]
                else:
                    d[f] -= c
    return (FactoredPoly(a.p, 1, common),
            FactoredPoly(a.p, a.unit, fa),
            FactoredPoly(b.p, b.unit, fb))


class RationalFunction:
    """Exact fraction of polynomials over GF(p).

    The denominator unit is always normalized to 1 (folded into the
    numerator), so equal reduced fractions have syntactically equal
    denominators.
    """

    __slots__ = ('num', 'den', 'p')

    def __init__(self, num, den, _cancelled=False):
        if den.is_zero():
            raise DivByZero("zero denominator")
        p = num.p
        if num.is_zero():
            num, den = FactoredPoly.zero(p), FactoredPoly.one(p)
        else:
            if not _cancelled:
                num, den = _cancel(num, den)
            if den.unit != 1:
                num = num.scale(pow(den.unit, p - 2, p))
                den = FactoredPoly(p, 1, den.factors)
        self.num = num
        self.den = den
        self.p = p

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, p):
        return cls(FactoredPoly.zero(p), FactoredPoly.one(p), _cancelled=True)

    @classmethod
    def one(cls, p):
        return cls(FactoredPoly.one(p), FactoredPoly.one(p), _cancelled=True)

    @classmethod
    def scalar(cls, c, p):
        return cls(FactoredPoly.scalar(c, p), FactoredPoly.one(p), _cancelled=True)

    @classmethod
    def from_poly(cls, poly):
        return cls(FactoredPoly.from_poly(poly), FactoredPoly.one(poly.p),
                   _cancelled=True)

    @classmethod
    def fraction(cls, num_poly, den_poly):
        return cls(FactoredPoly.from_poly(num_poly), FactoredPoly.from_poly(den_poly))

    def is_zero(self):
        return self.num.is_zero()

    # -- field operations ---------------------------------------------------------

    def __mul__(self, other):
        if self.is_zero() or other.is_zero():
            return RationalFunction.zero(self.p)
        return RationalFunction(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        if other.is_zero():
            raise DivByZero("division by the zero rational function")
        if self.is_zero():
            return self
        return RationalFunction(self.num * other.den, self.den * other.num)

    def inverse(self):
        if self.is_zero():
            raise DivByZero("inverse of zero")
        return RationalFunction(self.den, self.num)

    def scale(self, c):
        if c % self.p == 0:
            return RationalFunction.zero(self.p)
        return RationalFunction(self.num.scale(c), self.den, _cancelled=True)

    def __neg__(self):
        return self.scale(self.p - 1)

    def __add__(self, other):
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        common, da, db = _common_split(self.den, other.den)
        left = (self.num * db).expand()
        right = (other.num * da).expand()
        num = left + right
        den = common * da * db
        return RationalFunction(FactoredPoly.from_poly(num), den).reduced()

    def __sub__(self, other):
        return self + (-other)

    def pow_int(self, k):
        if k == 0:
            return RationalFunction.one(self.p)
        if self.is_zero():
            return self
        return RationalFunction(self.num.pow_int(k), self.den.pow_int(k),
                                _cancelled=True)

    def square(self):
        return self.pow_int(2)

    def reduced(self):
        """Divide denominator factors out of the numerator where exact.

        Keeps fractions produced by telescoping sums small; since all
        occurring factors are irreducible brackets this is a genuine
        reduction, not a heuristic.
        """
        if self.is_zero() or not self.den.factors:
            return self
        num = self.num.expand()
        den_factors = dict(self.den.factors)
        changed = False
        for f in sorted(den_factors, key=_poly_sort_key):
            while den_factors.get(f, 0) > 0 and num.total_degree() >= f.total_degree():
                q = num.divide_exact(f)
                if q is None:
                    break
                num = q
                changed = True
                if den_factors[f] == 1:
                    del den_factors[f]
                else:
                    den_factors[f] -= 1
        if not changed:
            return self
        return RationalFunction(FactoredPoly.from_poly(num),
                                FactoredPoly(self.p, 1, den_factors))

    # -- predicates ------------------------------------------------------------------

    def equals(self, other):
        """Mathematical equality (independent of representatives)."""
        if self.p != other.p:
            raise ValueError("mixed characteristics")
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        if self.den.factors == other.den.factors:
            return (self.num.expand() == other.num.expand())
        return (self - other).is_zero()

    def __eq__(self, other):
        return isinstance(other, RationalFunction) and self.equals(other)

    def __hash__(self):
        raise TypeError("RationalFunction is unhashable; equality is mathematical")

    # -- evaluation and output ----------------------------------------------------------

    def evaluate(self, point, gf):
        d = self.den.evaluate(point, gf)
        if d == 0:
            raise DenominatorVanished("denominator vanishes at the sample point")
        return gf.mul(self.num.evaluate(point, gf), gf.inv(d))

    def text(self):
        if self.is_zero():
            return "0"
        num = self.num.text() if not self.num.factors or len(self.num.factors) <= 8 \
            else "(" + self.num.expand().text() + ")"
        if self.den.is_one():
            return num
        return f"{num} / ({self.den.text()})"

    def __repr__(self):
        body = self.text()
        if len(body) > 160:
            body = body[:157] + "..."
        return f"RF<GF({self.p})>({body})"
