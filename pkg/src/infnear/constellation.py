"""Constellations of infinitely near points and their divisor calculus.

A constellation is a rooted tree of points ``1..r`` (stored 0-based) where
every point after the root has a parent and a proximity set: the earlier
points whose exceptional divisors pass through it.  Divisors over the
constellation are integer vectors in one of two bases:

* ``DivisorE``: coefficients on the exceptional components ``E_i``;
* ``DivisorStar``: coordinates on the total transforms ``E_i*``.

Conversion uses the proximity matrix ``p`` with row-vector convention
``m = n . p`` (so ``n = m . p^-1``).  This is the only place the convention
is fixed; everything else goes through ``to_star`` / ``from_star``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction


class ConstellationError(ValueError):
    """Raised when a constellation violates one of its invariants."""


@dataclass(frozen=True)
class Constellation:
    d: int
    parents: tuple  # parents[0] is None
    prox: tuple  # tuple of frozensets of earlier indices

    def __post_init__(self):
        object.__setattr__(self, "parents", tuple(self.parents))
        object.__setattr__(self, "prox", tuple(frozenset(s) for s in self.prox))
        problems = self._violations()
        if problems:
            raise ConstellationError("; ".join(problems))

    def _violations(self):
        out = []
        if self.d < 2:
            out.append(f"ambient dimension d={self.d} < 2")
        r = len(self.parents)
        if r < 1:
            out.append("constellation needs at least the root point")
            return out
        if len(self.prox) != r:
            out.append("parents and prox have different lengths")
            return out
        if self.parents[0] is not None or self.prox[0]:
            out.append("root must have no parent and empty proximity set")
        for i in range(1, r):
            par = self.parents[i]
            if par is None or not 0 <= par < i:
                out.append(f"point {i + 1}: parent must precede it (topological order)")
                continue
            anc = self.ancestors(i)
            if par not in self.prox[i]:
                out.append(f"point {i + 1}: parent {par + 1} missing from proximity set")
            extra = self.prox[i] - anc
            if extra:
                out.append(f"point {i + 1}: proximate to non-ancestors {sorted(j + 1 for j in extra)}")
            if len(self.prox[i]) > self.d:
                out.append(f"point {i + 1}: proximate to {len(self.prox[i])} > d={self.d} points")
        return out

    @property
    def r(self):
        return len(self.parents)

    def ancestors(self, i):
        out = set()
        j = self.parents[i]
        while j is not None:
            out.add(j)
            j = self.parents[j]
        return out

    def depth(self, i):
        return len(self.ancestors(i))

    def children(self, i):
        return [j for j in range(self.r) if self.parents[j] == i]

    # JSON uses 1-based ids, as in {"d":2,"points":[{"id":1},{"id":2,"parent":1,"prox":[1]}]}
    def to_json(self):
        pts = [{"id": 1}]
        for i in range(1, self.r):
            pts.append({"id": i + 1, "parent": self.parents[i] + 1,
                        "prox": sorted((j + 1 for j in self.prox[i]), reverse=True)})
        return {"d": self.d, "points": pts}

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        pts = sorted(data["points"], key=lambda p: p["id"])
        ids = [p["id"] for p in pts]
        if ids != list(range(1, len(pts) + 1)):
            raise ConstellationError(f"point ids must be 1..r, got {ids}")
        parents, prox = [], []
        for p in pts:
            par = p.get("parent")
            parents.append(None if par is None else par - 1)
            prox.append(frozenset(j - 1 for j in p.get("prox", [])))
        return cls(int(data["d"]), parents, prox)

    @classmethod
    def chain(cls, d, proxes):
        """Chain of points, point ``i`` the child of ``i-1``.

        ``proxes`` lists the proximity sets (0-based) for points 2..r.
        """
        parents = [None] + list(range(len(proxes)))
        return cls(d, parents, [frozenset()] + [frozenset(s) for s in proxes])


def proximity_matrix(C: Constellation):
    """Return ``(p, p_inv)`` as lists of int rows.

    ``p[j][i] = -1`` when point ``i`` is proximate to point ``j``; ``p`` is
    upper unitriangular so the inverse is exact back-substitution.
    """
    r = C.r
    p = [[int(i == j) for i in range(r)] for j in range(r)]
    for i in range(r):
        for j in C.prox[i]:
            p[j][i] = -1
    # p = I - N with N strictly upper triangular and >= 0, so
    # p^-1 = I + N + N^2 + ...; solve column by column
    inv = [[0] * r for _ in range(r)]
    for col in range(r):
        for row in range(col, -1, -1):
            s = int(row == col)
            for k in range(row + 1, col + 1):
                s -= p[row][k] * inv[k][col]
            inv[row][col] = s
    return p, inv


def _vecmat(v, M):
    r = len(M)
    return tuple(sum(v[j] * M[j][i] for j in range(r)) for i in range(r))


@dataclass(frozen=True)
class DivisorE:
    constellation: Constellation
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        if len(self.coeffs) != self.constellation.r:
            raise ValueError(f"divisor has {len(self.coeffs)} coefficients, "
                             f"constellation has {self.constellation.r} points")

    def __add__(self, other):
        _same(self, other)
        return DivisorE(self.constellation, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return DivisorE(self.constellation, [-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return DivisorE(self.constellation, [a * c for a in self.coeffs])

    def floor_scale(self, c):
        """``floor(c D)`` taken coefficientwise, ``c`` any rational."""
        c = Fraction(c)
        return DivisorE(self.constellation, [(c * a).__floor__() for a in self.coeffs])


@dataclass(frozen=True)
class DivisorStar:
    constellation: Constellation
    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))
        if len(self.coords) != self.constellation.r:
            raise ValueError(f"star vector has {len(self.coords)} entries, "
                             f"constellation has {self.constellation.r} points")


@dataclass(frozen=True)
class PointBasis:
    constellation: Constellation
    basis: tuple

    def __post_init__(self):
        object.__setattr__(self, "basis", tuple(int(c) for c in self.basis))
        if len(self.basis) != self.constellation.r:
            raise ValueError(f"point basis has {len(self.basis)} entries, "
                             f"constellation has {self.constellation.r} points")
        if any(b < 0 for b in self.basis):
            raise ValueError(f"point basis entries must be >= 0: {self.basis}")

    @property
    def root(self):
        return self.basis[0]

    def as_star(self):
        return DivisorStar(self.constellation, self.basis)

    def divisor(self):
        """Coefficients ``v_i(I)`` of the associated (full) divisor."""
        return from_star(self.as_star())


def _same(a, b):
    if a.constellation != b.constellation:
        raise ValueError("objects live on different constellations")


def to_star(D: DivisorE) -> DivisorStar:
    p, _ = proximity_matrix(D.constellation)
    return DivisorStar(D.constellation, _vecmat(D.coeffs, p))


def from_star(m: DivisorStar) -> DivisorE:
    _, inv = proximity_matrix(m.constellation)
    return DivisorE(m.constellation, _vecmat(m.coords, inv))


def is_full(D: DivisorE) -> bool:
    return all(c >= 0 for c in to_star(D).coords)


def is_full_literal(D: DivisorE) -> bool:
    """The defining test: ``n_i >= 0`` and ``n_i >= sum of n_j`` over points ``i`` is proximate to."""
    n = D.coeffs
    C = D.constellation
    return all(n[i] >= 0 and n[i] >= sum(n[j] for j in C.prox[i]) for i in range(C.r))


def adjoint_basis(r: PointBasis, d: int | None = None) -> PointBasis:
    if d is None:
        d = r.constellation.d
    return PointBasis(r.constellation, [max(b + 1 - d, 0) for b in r.basis])


def product_basis(r1: PointBasis, r2: PointBasis) -> PointBasis:
    _same(r1, r2)
    return PointBasis(r1.constellation, [a + b for a, b in zip(r1.basis, r2.basis)])


def canonical_divisor(C: Constellation) -> DivisorE:
    return from_star(DivisorStar(C, [C.d - 1] * C.r))


def fiber_divisor(C: Constellation) -> DivisorE:
    return from_star(DivisorStar(C, [1] + [0] * (C.r - 1)))


def zero_divisor(C: Constellation) -> DivisorE:
    return DivisorE(C, [0] * C.r)
