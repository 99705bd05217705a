"""The generic Artinian reduction A = k[D]/(f_1,...,f_{n+1}).

Symbolic side: elements of A are represented as rational-function
combinations of square-free face monomials (``ElementRep``); arbitrary
monomials are rewritten to that form by the complexity-lowering
elimination step, one linear relation per rewrite.

Randomized side: Hilbert functions and rank questions are settled by
specializing the generic coefficients to random elements of GF(p^w) and
running exact linear algebra on the graded pieces, accepting a value
once two seeds agree.
"""

from dataclasses import dataclass
from itertools import combinations_with_replacement
from random import Random

from .brackets import GenericMatrix, GenericMatrixSpec, bracket_ratio
from .complexes import SimplicialComplex
from .errors import CannotAvoid, DegreeTooHigh, DenominatorVanished, UnstableRank
from .gf import GF, FieldConfig
from .linalg import linalg_for
from .polynomials import avar
from .rational import RationalFunction


@dataclass(frozen=True)
class XMonomial:
    """Monomial in the ring variables, as a sorted (vertex, exponent) tuple."""
    exponents: tuple

    @classmethod
    def from_dict(cls, d):
        return cls(tuple(sorted((v, e) for v, e in d.items() if e)))

    @classmethod
    def from_vertices(cls, vertices):
        d = {}
        for v in vertices:
            d[v] = d.get(v, 0) + 1
        return cls.from_dict(d)

    @property
    def degree(self):
        return sum(e for _, e in self.exponents)

    @property
    def support(self):
        return tuple(v for v, _ in self.exponents)

    @property
    def complexity(self):
        """Total degree minus support size; zero iff square-free."""
        return sum(e - 1 for _, e in self.exponents)


class ElementRep:
    """Element of A as a combination of square-free face monomials."""

    __slots__ = ('degree', 'terms')

    def __init__(self, degree, terms):
        self.degree = degree
        self.terms = {f: c for f, c in terms.items() if not c.is_zero()}

    @classmethod
    def zero(cls, degree):
        return cls(degree, {})

    @classmethod
    def monomial(cls, face, p):
        face = tuple(sorted(face))
        return cls(len(face), {face: RationalFunction.one(p)})

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        if self.degree != other.degree:
            raise DegreeTooHigh("cannot add elements of different degrees")
        out = dict(self.terms)
        for f, c in other.terms.items():
            s = out.get(f)
            out[f] = c if s is None else s + c
        return ElementRep(self.degree, out)

    def scale(self, rf):
        if rf.is_zero():
            return ElementRep.zero(self.degree)
        return ElementRep(self.degree, {f: c * rf for f, c in self.terms.items()})

    def __repr__(self):
        inner = ", ".join(f"{f}: {c.text()}" for f, c in sorted(self.terms.items()))
        return f"ElementRep(deg={self.degree}, {{{inner}}})"


class ReductionContext:
    """All shared state for one complex and one coefficient field."""

    def __init__(self, D, field=None):
        self.D = D
        self.field = field or FieldConfig()
        n = D.n
        self.spec = GenericMatrixSpec(n + 1, D.m + 2 * n)
        self.matrix = GenericMatrix(self.spec, self.field.p)
        self.e = min(D.facets)
        self.fresh_default = D.m + 1
        self._sqfree_cache = {}
        self._path_sign_cache = {}

    @property
    def p(self):
        return self.field.p

    @property
    def n(self):
        return self.D.n

    @property
    def m(self):
        return self.D.m

    def rf_zero(self):
        return RationalFunction.zero(self.p)

    def rf_one(self):
        return RationalFunction.one(self.p)

    def ratio(self, num_cols, den_cols):
        return bracket_ratio(self.matrix, num_cols, den_cols)


def linear_relation(ctx, cols):
    """The degree-1 relation sum_t [cols, t] x_t = 0 in A.

    ``cols`` is a sequence of n column indices of the generic matrix
    (fresh columns allowed); the output maps each vertex t to its
    bracket coefficient.
    """
    cols = list(cols)
    if len(cols) != ctx.n:
        raise DegreeTooHigh(f"need {ctx.n} fixed columns")
    coeffs = {}
    for t in range(1, ctx.m + 1):
        rf = ctx.ratio([cols + [t]], [])
        if not rf.is_zero():
            coeffs[(t,)] = rf
    return ElementRep(1, coeffs)


def _rewrite_vertex(ctx, fixed_cols, v):
    """Solve the relation on ``fixed_cols`` for x_v.

    Returns the list of (t, coefficient) with x_v = sum coeff_t x_t,
    where t runs outside fixed_cols + {v}.
    """
    out = []
    for t in range(1, ctx.m + 1):
        if t == v or t in fixed_cols:
            continue
        coeff = ctx.ratio([list(fixed_cols) + [t]],
                          [list(fixed_cols) + [v]]).scale(ctx.p - 1)
        out.append((t, coeff))
    return out


def reduce_to_squarefree(ctx, g):
    """Rewrite pi(g) as a combination of square-free face monomials.

    One elimination step replaces the smallest squared vertex v using
    the linear relation on a facet containing the support; every
    generated monomial has complexity exactly one lower, so the
    recursion terminates after complexity(g) rewrites.
    """
    if isinstance(g, dict):
        g = XMonomial.from_dict(g)
    if g.degree > ctx.n + 1:
        raise DegreeTooHigh(f"degree {g.degree} exceeds socle degree {ctx.n + 1}")
    return _reduce_mono(ctx, g.exponents)


def _reduce_mono(ctx, exponents):
    cached = ctx._sqfree_cache.get(exponents)
    if cached is not None:
        return cached
    degree = sum(e for _, e in exponents)
    support = tuple(v for v, _ in exponents)
    if not ctx.D.is_face(support):
        result = ElementRep.zero(degree)
    elif all(e == 1 for _, e in exponents):
        result = ElementRep.monomial(support, ctx.p)
    else:
        v = next(vv for vv, e in exponents if e >= 2)
        sigma = min(f for f in ctx.D.facets if set(support).issubset(f))
        fixed = tuple(c for c in sigma if c != v)
        result = ElementRep.zero(degree)
        lowered = dict(exponents)
        lowered[v] -= 1
        if lowered[v] == 0:
            del lowered[v]
        for t, coeff in _rewrite_vertex(ctx, fixed, v):
            child_exps = dict(lowered)
            child_exps[t] = child_exps.get(t, 0) + 1
            child_support = tuple(sorted(child_exps))
            if not ctx.D.is_face(child_support):
                continue
            child = _reduce_mono(ctx, tuple(sorted(child_exps.items())))
            result = result + child.scale(coeff)
    ctx._sqfree_cache[exponents] = result
    return result


def reduce_avoiding_vertex(ctx, u, p_vertex):
    """Equal element of A whose support faces all avoid ``p_vertex``.

    Each offending square-free term is rewritten once, using the facet
    containing its support; the replacement terms are square-free again
    and never reintroduce the vertex.
    """
    if not (1 <= u.degree <= ctx.n + 1):
        raise DegreeTooHigh("degree must be between 1 and n+1")
    if all(p_vertex in f for f in ctx.D.facets):
        raise CannotAvoid(f"every facet contains vertex {p_vertex}")
    out = ElementRep.zero(u.degree)
    for face, coeff in u.terms.items():
        if p_vertex not in face:
            out = out + ElementRep(u.degree, {face: coeff})
            continue
        sigma = min(f for f in ctx.D.facets if set(face).issubset(f))
        fixed = tuple(c for c in sigma if c != p_vertex)
        rest = tuple(v for v in face if v != p_vertex)
        for t, tcoeff in _rewrite_vertex(ctx, fixed, p_vertex):
            new_face = tuple(sorted(rest + (t,)))
            if ctx.D.is_face(new_face):
                out = out + ElementRep(u.degree, {new_face: coeff * tcoeff})
    return out


def multiply(ctx, u, w):
    """Product in A via reduction of each monomial product."""
    degree = u.degree + w.degree
    if degree > ctx.n + 1:
        raise DegreeTooHigh(f"product degree {degree} exceeds socle degree")
    out = ElementRep.zero(degree)
    for f1, c1 in u.terms.items():
        for f2, c2 in w.terms.items():
            mono = XMonomial.from_vertices(f1 + f2)
            out = out + reduce_to_squarefree(ctx, mono).scale(c1 * c2)
    return out


# -- randomized specialization backend ------------------------------------------


def backend_field(field):
    """Sampling field for the randomized backend.

    The fast packed linear algebra needs w == 1 away from p == 2, so
    odd characteristics sample from the prime field itself.
    """
    return GF(field.p, field.w if field.p == 2 else 1)


def sample_point(ctx, seed):
    """Deterministic random point for all generic matrix entries."""
    gf = backend_field(ctx.field)
    rng = Random(seed)
    point = {}
    for i in range(1, ctx.spec.rows + 1):
        for j in range(1, ctx.spec.cols + 1):
            point[avar(i, j)] = gf.sample(rng)
    return gf, point


def random_evaluate(f, gf, seed, point=None):
    """Exact evaluation at a seed-derived random point of GF(p^w).

    Raises DenominatorVanished for rational functions whose denominator
    vanishes at the point; callers retry with a fresh seed.
    """
    if point is None:
        rng = Random(seed)
        if isinstance(f, RationalFunction):
            variables = set()
            for fp in (f.num, f.den):
                for g in fp.factors:
                    variables |= g.variables()
        else:
            variables = f.variables()
        point = {v: gf.sample(rng) for v in sorted(variables)}
    return f.evaluate(point, gf)


def face_monomials(D, degree):
    """Monomials of the face ring basis in one degree."""
    if degree == 0:
        return [()]
    out = set()
    for size in range(1, degree + 1):
        for face in D.faces(size - 1):
            for extra in combinations_with_replacement(face, degree - size):
                exps = {v: 1 for v in face}
                for v in extra:
                    exps[v] += 1
                out.add(tuple(sorted(exps.items())))
    return sorted(out)


class GradedQuotient:
    """(R/I_D)/(linear forms) over a sample field, degree by degree."""

    def __init__(self, D, forms, gf, max_degree):
        self.D = D
        self.forms = forms
        self.gf = gf
        self.la = linalg_for(gf)
        self.max_degree = max_degree
        self.basis = {}
        self.index = {}
        self._rref = {}
        self._pivots = {}
        for d in range(max_degree + 1):
            mons = face_monomials(D, d)
            self.basis[d] = mons
            self.index[d] = {m: i for i, m in enumerate(mons)}

    def _relations(self, d):
        if d in self._rref:
            return self._rref[d], self._pivots[d]
        rows = []
        gf = self.gf
        if d >= 1:
            for form in self.forms:
                for mono in self.basis[d - 1]:
                    row = [gf.zero()] * len(self.basis[d])
                    for v, coeff in form.items():
                        if coeff == 0:
                            continue
                        bumped = _mono_mul_vertex(mono, v)
                        idx = self.index[d].get(bumped)
                        if idx is not None:
                            row[idx] = gf.add(row[idx], coeff)
                    rows.append(row)
        M = self.la.matrix(rows)
        R, pivots = self.la.rref(M) if M.size else (M, [])
        self._rref[d] = R
        self._pivots[d] = pivots
        return R, pivots

    def dim(self, d):
        if d < 0 or d > self.max_degree:
            return 0
        if not self.basis[d]:
            return 0
        _, pivots = self._relations(d)
        return len(self.basis[d]) - len(pivots)

    def dims(self):
        return tuple(self.dim(d) for d in range(self.max_degree + 1))

    def free_monomials(self, d):
        """Monomials whose cosets form a basis of the quotient in degree d."""
        _, pivots = self._relations(d)
        taken = set(pivots)
        return [m for i, m in enumerate(self.basis[d]) if i not in taken]

    def coords(self, vectors, d):
        """Quotient coordinates (free columns) of row vectors in degree d."""
        R, pivots = self._relations(d)
        M = self.la.matrix(vectors)
        if M.size == 0:
            return M
        reduced = self.la.reduce_rows(M, R, pivots) if len(pivots) else M
        free = [i for i in range(len(self.basis[d])) if i not in set(pivots)]
        return reduced[:, free]

    def vector_of_monomials(self, items, d):
        """Row vector from (monomial, field element) pairs."""
        gf = self.gf
        row = [gf.zero()] * len(self.basis[d])
        for mono, c in items:
            idx = self.index[d].get(mono)
            if idx is not None:
                row[idx] = gf.add(row[idx], c)
        return row

    def mult_map_rank(self, form, d):
        """Rank of multiplication by a linear form, degree d -> d+1."""
        images = self.mult_map_matrix(form, d)
        if len(images) == 0:
            return 0
        return self.la.rank(images)

    def mult_map_matrix(self, form, d):
        rows = []
        for mono in self.free_monomials(d):
            items = []
            for v, coeff in form.items():
                if coeff == 0:
                    continue
                bumped = _mono_mul_vertex(mono, v)
                items.append((bumped, coeff))
            rows.append(self.vector_of_monomials(items, d + 1))
        if not rows:
            return self.la.matrix([])
        return self.coords(rows, d + 1)


def _mono_mul_vertex(mono, v):
    d = dict(mono)
    d[v] = d.get(v, 0) + 1
    return tuple(sorted(d.items()))


class SpecializedAlgebra:
    """The reduction of one complex specialized at one random point."""

    def __init__(self, ctx, seed, max_degree=None):
        self.ctx = ctx
        self.seed = seed
        self.gf, self.point = sample_point(ctx, seed)
        forms = []
        for i in range(1, ctx.n + 2):
            forms.append({j: self.point[avar(i, j)] for j in range(1, ctx.m + 1)})
        if max_degree is None:
            max_degree = ctx.n + 2
        self.quotient = GradedQuotient(ctx.D, forms, self.gf, max_degree)

    def dims(self):
        return self.quotient.dims()

    def element_vector(self, u):
        items = []
        for face, coeff in u.terms.items():
            mono = tuple((v, 1) for v in face)
            items.append((mono, coeff.evaluate(self.point, self.gf)))
        return self.quotient.vector_of_monomials(items, u.degree)

    def element_is_zero(self, u):
        if u.is_zero():
            return True
        vec = self.element_vector(u)
        co = self.quotient.coords([vec], u.degree)
        return not co.any()


def stable_value(fn, seeds, context=""):
    """Run fn(seed) until two consecutive results agree.

    Seeds raising DenominatorVanished are skipped; disagreement after
    the seed budget raises UnstableRank.
    """
    previous = _SENTINEL = object()
    disagreements = 0
    for seed in seeds:
        try:
            value = fn(seed)
        except DenominatorVanished:
            continue
        if previous is not _SENTINEL and value == previous:
            return value
        if previous is not _SENTINEL:
            disagreements += 1
        previous = value
    raise UnstableRank(
        f"no two consecutive seeds agreed{' for ' + context if context else ''}"
        f" ({disagreements} disagreements)")


def hilbert_function(ctx, seeds=(1, 2, 3, 4, 5, 6)):
    """dim_k A_0 .. dim_k A_{n+1} via the randomized backend."""
    def run(seed):
        return SpecializedAlgebra(ctx, seed, max_degree=ctx.n + 1).dims()
    return stable_value(run, seeds, context="hilbert function")


def element_is_nonzero(ctx, u, seeds=(1, 2, 3, 4, 5, 6)):
    """Randomized two-seed test that an ElementRep is nonzero in A."""
    if u.is_zero():
        return False
    def run(seed):
        return SpecializedAlgebra(ctx, seed).element_is_zero(u)
    return not stable_value(run, seeds, context="element membership")
