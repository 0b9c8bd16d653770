"""Smooth fans obtained from the positive orthant by star subdivisions."""

from __future__ import annotations

from dataclasses import dataclass, field

from .._exact import det


@dataclass
class Fan:
    """Rays, their labels and the maximal cones.

    ``labels[j]`` is ``("axis", k)`` for the coordinate ray ``e_k`` or
    ``("E", i)`` for the exceptional divisor of point ``i`` (0-based).
    Each maximal cone is a tuple of ``d`` ray indices, ordered so that
    position ``j`` is the ray of the chart's ``j``-th coordinate.
    """

    d: int
    rays: list = field(default_factory=list)
    labels: list = field(default_factory=list)
    cones: list = field(default_factory=list)

    @classmethod
    def orthant(cls, d):
        rays = [tuple(int(i == k) for i in range(d)) for k in range(d)]
        return cls(d, rays, [("axis", k) for k in range(d)], [tuple(range(d))])

    def star_subdivide(self, cone, label):
        """Blow up the torus-fixed point of ``cone``.

        Adds the ray ``sum of the cone's rays`` and replaces the cone by the
        ``d`` cones where one ray at a time is swapped for the new one.
        Returns ``(ray_index, new_cones)`` with ``new_cones[i]`` the chart in
        which coordinate ``i`` carries the new divisor.
        """
        if cone not in self.cones:
            raise ValueError(f"{cone} is not a maximal cone")
        w = tuple(sum(self.rays[j][k] for j in cone) for k in range(self.d))
        self.rays.append(w)
        self.labels.append(label)
        idx = len(self.rays) - 1
        pos = self.cones.index(cone)
        new = [tuple(idx if j == i else c for j, c in enumerate(cone)) for i in range(self.d)]
        self.cones[pos:pos + 1] = new
        return idx, new

    def exceptional_rays(self):
        """Map point index -> ray index."""
        return {lab[1]: j for j, lab in enumerate(self.labels) if lab[0] == "E"}

    def axis_rays(self):
        return {lab[1]: j for j, lab in enumerate(self.labels) if lab[0] == "axis"}

    def is_smooth(self):
        return all(abs(det([self.rays[j] for j in cone])) == 1 for cone in self.cones)

    def ray_coefficients(self, divisor_coeffs, axis=None):
        """Spread E-coefficients (point order) and optional axis coefficients over rays."""
        out = [0] * len(self.rays)
        ex = self.exceptional_rays()
        for i, c in enumerate(divisor_coeffs):
            out[ex[i]] = int(c)
        if axis is not None:
            for k, j in self.axis_rays().items():
                out[j] = int(axis[k])
        return out

    def to_json(self):
        return {
            "d": self.d,
            "rays": [list(r) for r in self.rays],
            "labels": [f"x{k + 1}" if kind == "axis" else f"E{k + 1}" for kind, k in self.labels],
            "cones": [list(c) for c in self.cones],
        }

    @classmethod
    def from_json(cls, data):
        labels = []
        for lab in data["labels"]:
            kind = "axis" if lab.startswith("x") else "E"
            labels.append((kind, int(lab[1:]) - 1))
        return cls(int(data["d"]), [tuple(r) for r in data["rays"]], labels,
                   [tuple(c) for c in data["cones"]])
