"""The socle functional Psi: A_{n+1} -> k, by two independent algorithms.

Algorithm one walks facet paths: across a shared ridge the two facet
monomials are proportional with an explicit bracket ratio and a sign,
so any socle element reduces to the reference facet.  Algorithm two
(characteristic 2 only) evaluates the closed facet-sum formula whose
summands are bracket ratios attached to a fresh generic column.

Values are rational functions in bracket determinants; in
characteristic 2 the functional is canonical (independent of the
reference facet).
"""

from .brackets import bracket_rf, bracket_ratio
from .complexes import facet_path, is_closed_pseudomanifold
from .errors import (BadShape, CharNot2, EvenDimension, NotAFace, NotCodim1,
                     NotSimplexBoundary, WrongDegree)
from .polynomials import Polynomial, perm_sign_of_sequence
from .rational import FactoredPoly, RationalFunction
from .reduction import XMonomial, multiply, reduce_to_squarefree

PsiValue = RationalFunction


def _path_sign(ctx, start, end, path=None):
    """Sign epsilon with [start]pi(x_start) = epsilon [end]pi(x_end).

    Both brackets on sorted columns; the sign accumulates one ridge
    flip at a time.  Characteristic 2 needs no walk at all.
    """
    if ctx.p == 2:
        return 1
    start = tuple(sorted(start))
    end = tuple(sorted(end))
    key = (start, end, tuple(map(tuple, path)) if path else None)
    cached = ctx._path_sign_cache.get(key)
    if cached is not None:
        return cached
    if path is None:
        path = facet_path(ctx.D, start, end)
    sign = 1
    for cur, nxt in zip(path, path[1:]):
        ridge = tuple(sorted(set(cur) & set(nxt)))
        d1 = next(v for v in cur if v not in ridge)
        d2 = next(v for v in nxt if v not in ridge)
        s1 = perm_sign_of_sequence(ridge + (d1,))
        s2 = perm_sign_of_sequence(ridge + (d2,))
        # [ridge,d1] pi(x_cur) = -[ridge,d2] pi(x_nxt)
        sign = -sign * s1 * s2
    ctx._path_sign_cache[key] = sign
    return sign


def psi_facet(ctx, sigma, e=None, path=None):
    """Psi_e of a facet monomial: epsilon / [sigma], always 1/[sigma] in
    characteristic 2."""
    facet = tuple(sorted(sigma))
    if facet not in ctx.D.facets:
        raise NotAFace(f"{facet} is not a facet")
    e = tuple(e) if e is not None else ctx.e
    if tuple(sorted(e)) not in ctx.D.facets:
        raise NotAFace(f"reference {e} is not a facet")
    eps = _path_sign(ctx, facet, sorted(e), path=path)
    se = perm_sign_of_sequence(e)
    sign = (eps * se) % ctx.p
    _, poly = ctx.matrix.bracket_signed(facet)
    return RationalFunction(FactoredPoly.scalar(sign, ctx.p),
                            FactoredPoly.from_poly(poly))


def psi_element(ctx, u, e=None):
    """Linear extension of psi_facet over the square-free support."""
    if u.degree != ctx.n + 1:
        raise WrongDegree(f"degree {u.degree}, socle degree is {ctx.n + 1}")
    total = ctx.rf_zero()
    for face in sorted(u.terms):
        total = total + u.terms[face] * psi_facet(ctx, face, e=e)
    return total


def psi_monomial(ctx, mono, e=None):
    """Psi of an arbitrary degree-(n+1) monomial via the reduction path."""
    if isinstance(mono, dict):
        mono = XMonomial.from_dict(mono)
    return psi_element(ctx, reduce_to_squarefree(ctx, mono), e=e)


def psi_codim1_square(ctx, face, c, e=None):
    """Psi of x_c^2 * x_{face minus c}: the two-facet ridge formula.

    ``face`` is a codimension-1 face containing the squared vertex c.
    """
    face = tuple(sorted(face))
    if len(face) != ctx.n or not ctx.D.is_face(face):
        raise NotCodim1(f"{face} is not a codimension-1 face")
    if c not in face:
        raise NotCodim1(f"distinguished vertex {c} not in {face}")
    containing = ctx.D.facets_containing(face)
    if len(containing) != 2:
        raise NotCodim1(f"ridge {face} lies in {len(containing)} facets")
    d1, d2 = sorted(set(containing[0]) ^ set(containing[1]))
    b = tuple(v for v in face if v != c)
    tau1 = b + (c, d1)
    ratio = bracket_ratio(ctx.matrix, [b + (d1, d2)], [b + (c, d1), b + (c, d2)])
    return (ratio.scale(ctx.p - 1)
            * bracket_rf(ctx.matrix, tau1)
            * psi_facet(ctx, tau1, e=e))


def h_term(ctx, tau1, tau2, sigma, r=None):
    """One facet's summand in the facet-sum formula (characteristic 2)."""
    if ctx.p != 2:
        raise CharNot2("the facet-sum formula needs characteristic 2")
    tau1 = tuple(sorted(tau1))
    tau2 = tuple(sorted(tau2))
    if set(tau1) & set(tau2):
        raise BadShape("squared and linear parts must be disjoint")
    if 2 * len(tau1) + len(tau2) != ctx.n + 1:
        raise BadShape("parts must have 2|tau1| + |tau2| = n + 1")
    r = ctx.fresh_default if r is None else r
    if not (ctx.m + 1 <= r <= ctx.spec.cols):
        raise BadShape(f"fresh column {r} outside {ctx.m + 1}..{ctx.spec.cols}")
    sigma = tuple(sorted(sigma))
    tau = set(tau1) | set(tau2)
    if not tau.issubset(sigma):
        return ctx.rf_zero()
    sigma_r = tuple(sorted(sigma + (r,)))
    free = [v for v in sigma if v not in tau]
    num = [tuple(c for c in sigma_r if c != j) for j in tau1]
    den = [sigma] + [tuple(c for c in sigma_r if c != j) for j in free]
    return bracket_ratio(ctx.matrix, num, den)


def psi_sum_formula(ctx, tau1, tau2, r=None, specialize_fresh=False):
    """Psi of (prod x_c^2)(prod x_b) as a sum of bracket ratios over
    the facets containing the support (characteristic 2).

    The result is independent of the fresh column r; with
    ``specialize_fresh`` the fresh column is specialized to the first
    unit vector inside every summand before adding, which must give the
    same total.
    """
    if ctx.p != 2:
        raise CharNot2("the facet-sum formula needs characteristic 2")
    tau1 = tuple(sorted(tau1))
    tau2 = tuple(sorted(tau2))
    tau = tuple(sorted(set(tau1) | set(tau2)))
    if len(tau) != len(tau1) + len(tau2) or not ctx.D.is_face(tau):
        raise NotAFace(f"{tau1} u {tau2} is not a face")
    if 2 * len(tau1) + len(tau2) != ctx.n + 1:
        raise BadShape("parts must have 2|tau1| + |tau2| = n + 1")
    r = ctx.fresh_default if r is None else r
    total = ctx.rf_zero()
    for sigma in ctx.D.facets:
        if not set(tau).issubset(sigma):
            continue
        term = h_term(ctx, tau1, tau2, sigma, r=r)
        if specialize_fresh:
            term = _specialize_column(ctx, term, r)
        total = total + term
    return total


def _specialize_column(ctx, rf, r):
    """Substitute a[1,r] = 1 and a[i,r] = 0 for i >= 2."""
    assignment = {('a', 1, r): 1}
    for i in range(2, ctx.spec.rows + 1):
        assignment[('a', i, r)] = 0
    num = Polynomial.constant(rf.num.unit, ctx.p)
    for f, ex in rf.num.factors.items():
        num = num * f.substitute(assignment) ** ex
    den = Polynomial.constant(1, ctx.p)
    for f, ex in rf.den.factors.items():
        den = den * f.substitute(assignment) ** ex
    return RationalFunction.fraction(num, den)


def psi_simplex_closed_form(ctx, c_part, b=None):
    """Closed form on the boundary of a simplex (characteristic 2).

    For n odd the argument is prod x_c^2 over l = (n+1)/2 vertices; for
    n even it is x_b * prod x_c^2 over l = n/2 vertices.  The value is
    the ratio of the complementary-vertex brackets.
    """
    if ctx.p != 2:
        raise CharNot2("closed simplex forms are stated in characteristic 2")
    D = ctx.D
    n = ctx.n
    if D.m != n + 2 or len(D.facets) != n + 2:
        raise NotSimplexBoundary("complex is not the boundary of a simplex")
    c_part = tuple(sorted(c_part))
    if n % 2 == 1:
        if b is not None:
            raise NotSimplexBoundary("odd dimension takes no linear vertex")
        if len(c_part) != (n + 1) // 2:
            raise NotSimplexBoundary(f"need {(n + 1) // 2} squared vertices")
        used = set(c_part)
    else:
        if b is None or b in c_part:
            raise NotSimplexBoundary("even dimension needs a linear vertex b")
        if len(c_part) != n // 2:
            raise NotSimplexBoundary(f"need {n // 2} squared vertices")
        used = set(c_part) | {b}
    tau = D.vertices
    if not used.issubset(tau):
        raise NotSimplexBoundary("vertices outside the simplex")
    g_part = [v for v in tau if v not in used]
    num = [tuple(v for v in tau if v != c) for c in c_part]
    den = [tuple(v for v in tau if v != g) for g in g_part]
    return bracket_ratio(ctx.matrix, num, den)


def rho_form(ctx, u, w, e=None):
    """The middle-degree symmetric bilinear form rho_e(u, w) = Psi_e(uw)."""
    if ctx.n % 2 == 0:
        raise EvenDimension("the middle pairing needs odd dimension")
    half = (ctx.n + 1) // 2
    if u.degree != half or w.degree != half:
        raise WrongDegree(f"both arguments must have degree {half}")
    return psi_element(ctx, multiply(ctx, u, w), e=e)


def check_pseudomanifold(ctx):
    ok, diag = is_closed_pseudomanifold(ctx.D)
    return ok, diag
