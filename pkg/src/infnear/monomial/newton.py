"""Newton polyhedra of monomial ideals: membership, interior, closure, adjoint.

Two independent routes are kept on purpose:

* ``np_member`` / ``np_interior`` decide a single point by an exact LP over
  the generators;
* ``NewtonPolyhedron`` holds the exact facet inequalities and is what the
  bulk operations (``integral_closure``, ``adjoint_howald``) evaluate on a
  lattice box.

The tests cross-check one against the other.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from math import gcd

import numpy as np

from .._exact import LPInfeasible, det, simplex_max
from .ideal import (MonomialIdeal, box_points, is_m_primary, member_mask,
                    minimal_in_box)


class NotMPrimary(ValueError):
    pass


def _lp_delta(v, gens):
    """Max ``delta >= 0`` with ``v - delta*1 >= sum lambda_g u_g`` (convex lambda).

    Returns None when even ``delta = 0`` is infeasible.
    """
    d = len(v)
    n = len(gens)
    # variables: lambda_1..n, delta, slack_1..d
    A = []
    for k in range(d):
        A.append([g[k] for g in gens] + [1] + [int(j == k) for j in range(d)])
    A.append([1] * n + [0] + [0] * d)
    b = list(v) + [1]
    c = [0] * n + [1] + [0] * d
    try:
        value, _ = simplex_max(c, A, b)
    except LPInfeasible:
        return None
    return value


def np_member(v, I: MonomialIdeal) -> bool:
    """Exact test for ``v ∈ NP(I)``: a convex combination of generators lies below ``v``."""
    v = [int(x) for x in v]
    if any(x < 0 for x in v):
        return False
    return _lp_delta(v, I.gens) is not None


def np_interior(v, I: MonomialIdeal) -> bool:
    """Exact test for ``v`` in the interior of ``NP(I)``.

    ``NP(I)`` is full dimensional and upward closed, so ``v`` is interior
    exactly when ``v - delta*(1,..,1)`` stays in it for some ``delta > 0``.
    """
    v = [int(x) for x in v]
    if any(x < 0 for x in v):
        return False
    delta = _lp_delta(v, I.gens)
    return delta is not None and delta > 0


def _normal(vectors, d):
    """Integer normal to ``d-1`` vectors in ``Z^d`` via signed maximal minors."""
    out = []
    for j in range(d):
        minor = [[row[k] for k in range(d) if k != j] for row in vectors]
        out.append(int((-1) ** j * det(minor)) if minor else (1 if j == 0 else 0))
    return out


class NewtonPolyhedron:
    """Exact H-description ``{v : a.v >= b}`` of ``conv(gens) + R^d_{>=0}``."""

    def __init__(self, I: MonomialIdeal):
        self.d = I.d
        self.vertices = self._prune(I.gens)
        self.facets = self._facets()
        self.A = np.array([a for a, _ in self.facets], dtype=np.int64)
        self.b = np.array([b for _, b in self.facets], dtype=np.int64)

    @staticmethod
    def _prune(gens):
        gens = list(gens)
        keep = []
        for i, g in enumerate(gens):
            others = gens[:i] + gens[i + 1:]
            if others and _lp_delta(g, others) is not None:
                continue
            keep.append(g)
        return keep

    def _facets(self):
        d = self.d
        V = self.vertices
        units = [tuple(int(i == k) for i in range(d)) for k in range(d)]
        found = set()
        for k in range(1, d + 1):
            for pts in itertools.combinations(V, k):
                base = pts[0]
                diffs = [tuple(p[i] - base[i] for i in range(d)) for p in pts[1:]]
                for dirs in itertools.combinations(units, d - k):
                    a = _normal(diffs + list(dirs), d)
                    if not any(a):
                        continue
                    if all(x <= 0 for x in a):
                        a = [-x for x in a]
                    elif any(x < 0 for x in a):
                        continue
                    g = 0
                    for x in a:
                        g = gcd(g, x)
                    a = tuple(x // g for x in a)
                    b = sum(x * y for x, y in zip(a, base))
                    if all(sum(x * y for x, y in zip(a, u)) >= b for u in V):
                        found.add((a, b))
        return sorted(found)

    def contains(self, points):
        pts = np.atleast_2d(np.asarray(points, dtype=np.int64))
        return np.all(pts @ self.A.T >= self.b, axis=1)

    def interior(self, points):
        pts = np.atleast_2d(np.asarray(points, dtype=np.int64))
        return np.all(pts @ self.A.T > self.b, axis=1)


@lru_cache(maxsize=4096)
def newton_polyhedron(I: MonomialIdeal) -> NewtonPolyhedron:
    return NewtonPolyhedron(I)


def _upper(I):
    return [int(x) for x in I.array.max(axis=0)]


@lru_cache(maxsize=4096)
def integral_closure(I: MonomialIdeal) -> MonomialIdeal:
    """Lattice points of ``NP(I)``.

    Minimal generators of the closure lie in the box bounded by the
    componentwise max of the generators: lowering any larger coordinate to
    that max keeps a point above the same convex combination.
    """
    P = newton_polyhedron(I)
    upper = _upper(I)
    pts = box_points(upper)
    mask = P.contains(pts)
    return MonomialIdeal(I.d, minimal_in_box(pts, mask, upper))


def is_integrally_closed(I: MonomialIdeal) -> bool:
    return integral_closure(I) == I


@lru_cache(maxsize=4096)
def adjoint_howald(I: MonomialIdeal) -> MonomialIdeal:
    """Monomials ``v`` with ``v + (1,..,1)`` in the interior of ``NP(I)``."""
    if not is_m_primary(I):
        raise NotMPrimary(f"adjoint oracle needs an m-primary ideal, got {I}")
    P = newton_polyhedron(I)
    upper = _upper(I)
    pts = box_points(upper)
    mask = P.interior(pts + 1)
    return MonomialIdeal(I.d, minimal_in_box(pts, mask, upper))


def closure_members_lp(I: MonomialIdeal, points):
    """LP-route membership for a batch of points (slow; used for cross-checks)."""
    return np.array([np_member(p, I) for p in points], dtype=bool)


def check_closure_box(I: MonomialIdeal):
    """Compare the facet route against the LP route on the whole generator box.

    Returns the first disagreeing point, or None.
    """
    closed = integral_closure(I)
    pts = box_points(_upper(I))
    fast = member_mask(pts, closed)
    for p, f in zip(pts, fast):
        if f != np_member(p, I):
            return tuple(int(x) for x in p)
    return None
