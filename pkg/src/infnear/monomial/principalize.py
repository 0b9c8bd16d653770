"""Principalize monomial ideals by blowing up closed points, chart by chart.

Each point of the constellation is the origin of an affine chart, i.e. a
smooth cone of the fan.  Chart coordinate ``j`` corresponds to ray ``j`` of
the cone, so the monomial ``x^u`` pulls back to the chart monomial with
exponents ``<u, ray_j>``; the transform divides that by the gcd.
Charts are explored breadth first, in chart order ``1..d``.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from ..constellation import Constellation, PointBasis, from_star
from ..toric.fan import Fan
from .ideal import (DimensionMismatch, MonomialIdeal, divide, is_m_primary,
                    monomial_factor, order, zero_locus_components)

DEPTH_CAP = 64


class NotFinitelySupported(Exception):
    """A transform has a positive-dimensional zero locus (a curve of base points or worse).

    ``path`` is the sequence of charts (0-based) from the root, ``ideal``
    the index of the offending ideal, ``transform`` its transform in that
    chart and ``components`` the coordinate subspaces it vanishes on, each
    given by the set of chart coordinates that are zero there.
    """

    def __init__(self, path, ideal, transform, components):
        self.path = tuple(path)
        self.ideal = ideal
        self.transform = transform
        self.components = [sorted(c) for c in components]
        dim = transform.d - min(len(c) for c in components)
        self.dimension = dim
        super().__init__(
            f"ideal #{ideal} is not finitely supported: at chart path "
            f"{[p + 1 for p in self.path]} its transform {transform} vanishes on a "
            f"{dim}-dimensional coordinate subspace")

    def to_json(self):
        return {
            "status": "NotFinitelySupported",
            "ideal": self.ideal,
            "chart_path": [p + 1 for p in self.path],
            "depth": len(self.path),
            "transform": self.transform.to_json(),
            "zero_locus": [[f"x{j + 1}" for j in c] for c in self.components],
            "dimension": self.dimension,
        }


class DepthCapExceeded(RuntimeError):
    pass


def chart_transform(I: MonomialIdeal, rays) -> MonomialIdeal:
    """Transform of ``I`` at the origin of the chart with the given cone rays."""
    R = np.array(rays, dtype=np.int64).T  # d x d, column j = ray j
    E = I.array @ R
    return MonomialIdeal(I.d, E - E.min(axis=0))


@dataclass
class PrincipalizationTree:
    ideals: list
    factors: list
    constellation: Constellation
    bases: list
    fan: Fan
    paths: list
    cones: list
    transforms: list = field(repr=False)  # transforms[point][ideal]

    @property
    def basis(self):
        return self.bases[0]

    def rays_at(self, point):
        return [self.fan.rays[j] for j in self.cones[point]]

    def transform(self, I: MonomialIdeal, point) -> MonomialIdeal:
        """Transform of any ideal at a point of this tree."""
        return chart_transform(I, self.rays_at(point))

    def valuations(self, k=0):
        """E-coefficients ``v_i`` of ideal ``k`` computed from its point basis."""
        return from_star(self.bases[k].as_star()).coeffs

    def ray_valuations(self, I: MonomialIdeal):
        """``min_u <u, ray>`` for each exceptional ray, in point order."""
        ex = self.fan.exceptional_rays()
        G = I.array
        return tuple(int((G @ np.array(self.fan.rays[ex[i]])).min()) for i in range(self.constellation.r))

    def base_points(self, k=0):
        return [i for i, b in enumerate(self.bases[k].basis) if b > 0]

    def verify(self):
        """Cross-check fan valuations against point bases pushed through ``p^-1``."""
        problems = []
        for k, I in enumerate(self.ideals):
            if self.bases[k].root != order(I):
                problems.append(f"ideal #{k}: root entry {self.bases[k].root} != order {order(I)}")
            fan_v = self.ray_valuations(I)
            basis_v = self.valuations(k)
            if fan_v != basis_v:
                problems.append(f"ideal #{k}: ray valuations {fan_v} != basis valuations {basis_v}")
        # every maximal cone is a leaf chart: its origin was never blown up
        for cone in self.fan.cones:
            rays = [self.fan.rays[j] for j in cone]
            for k, I in enumerate(self.ideals):
                if not chart_transform(I, rays).is_unit:
                    problems.append(f"ideal #{k} not principal on leaf chart {cone}")
        if not self.fan.is_smooth():
            problems.append("fan has a non-unimodular cone")
        return problems

    def to_json(self):
        return {
            "constellation": self.constellation.to_json(),
            "ideals": [I.to_json() for I in self.ideals],
            "monomial_factors": [list(f) for f in self.factors],
            "bases": [list(b.basis) for b in self.bases],
            "fan": self.fan.to_json(),
            "charts": [{"point": i + 1, "path": [p + 1 for p in path], "cone": list(cone)}
                       for i, (path, cone) in enumerate(zip(self.paths, self.cones))],
        }

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        C = Constellation.from_json(data["constellation"])
        ideals = [MonomialIdeal.from_json(x) for x in data["ideals"]]
        fan = Fan.from_json(data["fan"])
        paths = [tuple(p - 1 for p in c["path"]) for c in data["charts"]]
        cones = [tuple(c["cone"]) for c in data["charts"]]
        tree = cls(ideals, [tuple(f) for f in data.get("monomial_factors", [[0] * C.d] * len(ideals))],
                   C, [PointBasis(C, b) for b in data["bases"]], fan, paths, cones, [])
        tree.transforms = [[tree.transform(I, i) for I in ideals] for i in range(C.r)]
        return tree


def principalize(ideals, depth_cap=DEPTH_CAP) -> PrincipalizationTree:
    """Jointly principalize monomial ideals by closed-point blowups.

    The monomial factor of each ideal is divided out first.  Raises
    ``NotFinitelySupported`` with a chart witness as soon as some transform
    stops being primary to its chart origin.
    """
    if isinstance(ideals, MonomialIdeal):
        ideals = [ideals]
    d = ideals[0].d
    if any(I.d != d for I in ideals):
        raise DimensionMismatch("all ideals must share the same d")
    factors = [monomial_factor(I) for I in ideals]
    ideals = [divide(I, f) for I, f in zip(ideals, factors)]
    for k, I in enumerate(ideals):
        if not I.is_unit and not is_m_primary(I):
            raise NotFinitelySupported((), k, I, zero_locus_components(I))

    fan = Fan.orthant(d)
    parents, prox, paths, cones, transforms = [None], [frozenset()], [()], [fan.cones[0]], [list(ideals)]
    queue = deque([0])
    while queue:
        i = queue.popleft()
        if len(paths[i]) >= depth_cap:
            raise DepthCapExceeded(f"recursion depth cap {depth_cap} exceeded at chart path "
                                   f"{[p + 1 for p in paths[i]]}")
        _, charts = fan.star_subdivide(cones[i], ("E", i))
        for c, cone in enumerate(charts):
            rays = [fan.rays[j] for j in cone]
            local = [chart_transform(I, rays) for I in ideals]
            if all(T.is_unit for T in local):
                continue
            for k, T in enumerate(local):
                if not T.is_unit and not is_m_primary(T):
                    raise NotFinitelySupported(paths[i] + (c,), k, T, zero_locus_components(T))
            parents.append(i)
            prox.append(frozenset(fan.labels[j][1] for j in cone if fan.labels[j][0] == "E"))
            paths.append(paths[i] + (c,))
            cones.append(cone)
            transforms.append(local)
            queue.append(len(parents) - 1)

    C = Constellation(d, parents, prox)
    bases = [PointBasis(C, [order(transforms[i][k]) for i in range(C.r)]) for k in range(len(ideals))]
    return PrincipalizationTree(ideals, factors, C, bases, fan, paths, cones, transforms)


def is_finitely_supported(I: MonomialIdeal) -> bool:
    try:
        principalize([I])
    except NotFinitelySupported:
        return False
    return True
