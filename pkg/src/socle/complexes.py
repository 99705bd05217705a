"""Simplicial complexes: validation, generators, faces, links, facet paths.

A complex is stored by its facet list; vertices are positive integers.
Complexes produced by ``from_facets`` and the generators live on the
vertex set {1..m}; derived complexes (links) keep their original vertex
labels.
"""

import json
from collections import deque
from itertools import combinations
from math import comb

from .errors import BadVertex, MixedDimension, NoPath, NotAFace, NotPure, TooSmall


class SimplicialComplex:
    """A pure simplicial complex given by its facets.

    Immutable after construction; all methods are pure queries.
    """

    __slots__ = ('vertices', 'facets', 'n', '_faces_by_dim')

    def __init__(self, facets):
        facets = sorted({tuple(sorted(f)) for f in facets})
        if not facets:
            raise NotPure("a complex needs at least one facet")
        sizes = {len(f) for f in facets}
        if len(sizes) != 1:
            raise MixedDimension(f"facet sizes {sorted(sizes)} differ")
        for f in facets:
            if len(set(f)) != len(f):
                raise BadVertex(f"facet {f} repeats a vertex")
        self.facets = tuple(facets)
        self.n = len(facets[0]) - 1
        self.vertices = tuple(sorted({v for f in facets for v in f}))
        self._faces_by_dim = None

    @property
    def m(self):
        return len(self.vertices)

    def __eq__(self, other):
        return isinstance(other, SimplicialComplex) and self.facets == other.facets

    def __hash__(self):
        return hash(self.facets)

    def __repr__(self):
        return f"SimplicialComplex(m={self.m}, n={self.n}, facets={len(self.facets)})"

    # -- queries -----------------------------------------------------------

    def is_face(self, sigma):
        sigma = set(sigma)
        return any(sigma.issubset(f) for f in self.facets)

    def faces(self, dim=None):
        """All faces, or the faces of one dimension (-1 is the empty face)."""
        if self._faces_by_dim is None:
            byd = {-1: {()}}
            for f in self.facets:
                for size in range(1, len(f) + 1):
                    byd.setdefault(size - 1, set()).update(combinations(f, size))
            self._faces_by_dim = {d: sorted(s) for d, s in byd.items()}
        if dim is None:
            return self._faces_by_dim
        return self._faces_by_dim.get(dim, [])

    def ridges(self):
        return self.faces(self.n - 1)

    def facets_containing(self, sigma):
        sigma = set(sigma)
        return [f for f in self.facets if sigma.issubset(f)]


def from_facets(m, facets):
    """Validated pure complex on the vertex set {1..m}."""
    facets = [tuple(sorted(f)) for f in facets]
    if not facets:
        raise NotPure("empty facet list")
    for f in facets:
        for v in f:
            if not (1 <= v <= m):
                raise BadVertex(f"vertex {v} outside 1..{m}")
    sizes = {len(f) for f in facets}
    if len(sizes) != 1:
        raise MixedDimension(f"facet sizes {sorted(sizes)} differ")
    fset = {frozenset(f) for f in facets}
    for f in fset:
        for g in fset:
            if f < g:
                raise NotPure(f"facet {sorted(f)} is contained in {sorted(g)}")
    D = SimplicialComplex(facets)
    missing = set(range(1, m + 1)) - set(D.vertices)
    if missing:
        raise BadVertex(f"vertices {sorted(missing)} appear in no facet")
    return D


def boundary_simplex(n):
    """Boundary complex of the (n+1)-simplex: all (n+1)-subsets of {1..n+2}."""
    if n < 1:
        raise TooSmall("dimension must be >= 1")
    return from_facets(n + 2, combinations(range(1, n + 3), n + 1))


def polygon(m):
    """Boundary of the m-gon with consecutive vertices 1..m."""
    if m < 3:
        raise TooSmall("a polygon needs at least 3 vertices")
    edges = [(i, i + 1) for i in range(1, m)] + [(1, m)]
    return from_facets(m, edges)


def suspension(D):
    """Join with two new vertices m+1, m+2; raises the dimension by one."""
    m = max(D.vertices)
    facets = [f + (m + 1,) for f in D.facets] + [f + (m + 2,) for f in D.facets]
    return SimplicialComplex(facets)


def cone(D):
    """Cone with apex m+1 (used for the colon-ideal algebra of the suspension)."""
    m = max(D.vertices)
    return SimplicialComplex([f + (m + 1,) for f in D.facets])


def is_closed_pseudomanifold(D):
    """Ridge condition plus facet connectivity, with diagnostics.

    Returns (ok, diagnostics); diagnostics lists ridges not contained in
    exactly two facets and reports facet-graph connectivity.
    """
    bad_ridges = []
    for ridge in D.ridges():
        count = len(D.facets_containing(ridge))
        if count != 2:
            bad_ridges.append((ridge, count))
    components = _facet_components(D)
    ok = not bad_ridges and components == 1
    return ok, {'bad_ridges': bad_ridges, 'facet_components': components}


def _facet_adjacency(D):
    byridge = {}
    for idx, f in enumerate(D.facets):
        for ridge in combinations(f, D.n):
            byridge.setdefault(ridge, []).append(idx)
    adj = {i: set() for i in range(len(D.facets))}
    for members in byridge.values():
        for i in members:
            for j in members:
                if i != j:
                    adj[i].add(j)
    return adj


def _facet_components(D):
    adj = _facet_adjacency(D)
    seen = set()
    comps = 0
    for start in adj:
        if start in seen:
            continue
        comps += 1
        stack = [start]
        while stack:
            i = stack.pop()
            if i in seen:
                continue
            seen.add(i)
            stack.extend(adj[i] - seen)
    return comps


def link(D, tau):
    """The link of a face: {sigma - tau : tau <= sigma in F(D)}, labels kept."""
    tau = tuple(sorted(tau))
    if not D.is_face(tau):
        raise NotAFace(f"{tau} is not a face")
    if not tau:
        return D
    facets = [tuple(v for v in f if v not in tau)
              for f in D.facets if set(tau).issubset(f)]
    return SimplicialComplex(facets)


def minimal_nonfaces(D):
    """Inclusion-minimal non-faces; these index the generators of the
    Stanley-Reisner ideal.

    A minimal non-face has all proper subsets faces, so its size is at
    most n+2 and enumeration over small subsets suffices.
    """
    out = []
    for size in range(1, D.n + 3):
        for cand in combinations(D.vertices, size):
            if D.is_face(cand):
                continue
            if all(D.is_face(cand[:i] + cand[i + 1:]) for i in range(size)):
                out.append(cand)
    return sorted(out)


def facet_path(D, sigma1, sigma2):
    """Shortest facet path (BFS); consecutive facets share a ridge."""
    sigma1, sigma2 = tuple(sorted(sigma1)), tuple(sorted(sigma2))
    index = {f: i for i, f in enumerate(D.facets)}
    if sigma1 not in index or sigma2 not in index:
        raise NotAFace("endpoints must be facets")
    if sigma1 == sigma2:
        return [sigma1]
    adj = _facet_adjacency(D)
    start, goal = index[sigma1], index[sigma2]
    prev = {start: None}
    queue = deque([start])
    while queue:
        i = queue.popleft()
        if i == goal:
            path = []
            while i is not None:
                path.append(D.facets[i])
                i = prev[i]
            return path[::-1]
        for j in sorted(adj[i]):
            if j not in prev:
                prev[j] = i
                queue.append(j)
    raise NoPath(f"no facet path from {sigma1} to {sigma2}")


def f_vector(D):
    """(f_0, ..., f_n): numbers of faces per dimension."""
    faces = D.faces()
    return tuple(len(faces.get(d, [])) for d in range(D.n + 1))


def h_vector(D):
    """Binomial transform of the f-vector."""
    f = (1,) + f_vector(D)
    d = D.n + 1
    return tuple(sum((-1) ** (k - i) * comb(d - i, k - i) * f[i]
                     for i in range(k + 1))
                 for k in range(d + 1))


def g_vector(D):
    h = h_vector(D)
    return (1,) + tuple(h[i] - h[i - 1] for i in range(1, (D.n + 1) // 2 + 1))


# -- JSON interchange ----------------------------------------------------------

def to_json(D):
    return json.dumps({'m': D.m, 'facets': [list(f) for f in D.facets]},
                      separators=(',', ':'), sort_keys=True)


def from_json(text):
    data = json.loads(text)
    m, facets = data['m'], data['facets']
    seen = set()
    for f in facets:
        if len(set(f)) != len(f):
            raise BadVertex(f"facet {f} repeats a vertex")
        key = frozenset(f)
        if key in seen:
            raise NotPure(f"duplicate facet {sorted(f)}")
        seen.add(key)
    return from_facets(m, facets)


def load_complex(path):
    with open(path, encoding='utf-8') as fh:
        return from_json(fh.read())
