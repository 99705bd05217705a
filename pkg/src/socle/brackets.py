"""Bracket determinants of the generic coefficient matrix.

The generic matrix M has entry a[i,j] in row i, column j; a bracket
[b_1,...,b_k] is the determinant of the square submatrix picking those
columns (in that order).  Brackets on sorted column sets are interned
per matrix so that factored rational arithmetic can cancel them
syntactically; unsorted column sequences contribute a permutation sign.
"""

from dataclasses import dataclass

from .errors import WrongLength
from .polynomials import Polynomial, avar, det_poly_matrix, perm_sign_of_sequence
from .rational import FACTOR_NAMES, FactoredPoly, RationalFunction


@dataclass(frozen=True)
class GenericMatrixSpec:
    rows: int
    cols: int

    def __post_init__(self):
        if self.cols < self.rows:
            raise WrongLength("generic matrix needs at least as many columns as rows")


class GenericMatrix:
    """Bracket cache for one generic matrix over GF(p)."""

    def __init__(self, spec, p, row_labels=None, det_cutoff=4):
        self.spec = spec
        self.p = p
        self.rows = tuple(row_labels) if row_labels else tuple(range(1, spec.rows + 1))
        self.det_cutoff = det_cutoff
        self._cache = {}

    def entry(self, i, j):
        return Polynomial.variable(avar(i, j), self.p)

    def bracket_sorted(self, cols):
        """Interned bracket polynomial on a sorted column tuple."""
        cols = tuple(cols)
        got = self._cache.get(cols)
        if got is None:
            entries = [[self.entry(i, j) for j in cols] for i in self.rows]
            got = det_poly_matrix(entries, cutoff=self.det_cutoff)
            self._cache[cols] = got
            name = "[" + ",".join(str(c) for c in cols) + "]"
            if len(self.rows) != self.spec.rows or self.rows[0] != 1:
                name = "M" + str(tuple(self.rows)) + name
            FACTOR_NAMES.setdefault(got, name)
        return got

    def bracket_signed(self, cols):
        """(sign, polynomial) for an arbitrary column sequence."""
        cols = tuple(cols)
        if len(cols) != len(self.rows):
            raise WrongLength(f"expected {len(self.rows)} columns, got {len(cols)}")
        for c in cols:
            if not (1 <= c <= self.spec.cols):
                raise WrongLength(f"column {c} outside 1..{self.spec.cols}")
        sign = perm_sign_of_sequence(cols)
        if sign == 0:
            return 0, Polynomial.zero(self.p)
        return sign % self.p, self.bracket_sorted(tuple(sorted(cols)))


def bracket(matrix, cols):
    """Bracket as a Polynomial, with the column order's sign applied."""
    sign, poly = matrix.bracket_signed(cols)
    return poly.scale(sign)


def bracket_rf(matrix, cols):
    """Bracket as a factored RationalFunction (numerator only)."""
    sign, poly = matrix.bracket_signed(cols)
    if sign == 0:
        return RationalFunction.zero(matrix.p)
    return RationalFunction(FactoredPoly.from_poly(poly).scale(sign),
                            FactoredPoly.one(matrix.p), _cancelled=True)


def bracket_ratio(matrix, num_cols, den_cols):
    """Product of numerator brackets over denominator brackets, factored.

    ``num_cols`` and ``den_cols`` are sequences of column sequences.
    """
    p = matrix.p
    num = FactoredPoly.one(p)
    for cols in num_cols:
        sign, poly = matrix.bracket_signed(cols)
        if sign == 0:
            return RationalFunction.zero(p)
        num = num * FactoredPoly.from_poly(poly).scale(sign)
    den = FactoredPoly.one(p)
    for cols in den_cols:
        sign, poly = matrix.bracket_signed(cols)
        den = den * FactoredPoly.from_poly(poly).scale(sign)
    return RationalFunction(num, den)
