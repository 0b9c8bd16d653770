"""Monomial ideals in ``k[x_1..x_d]`` stored by minimal exponent vectors."""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass
from functools import reduce

import numpy as np

VARS = "xyzw"


class DimensionMismatch(ValueError):
    pass


def minimalize(vectors):
    """Minimal elements of a set of exponent vectors under componentwise <=.

    Returns a sorted tuple of tuples.
    """
    vectors = [tuple(v) for v in vectors]
    if not vectors:
        return ()
    arr = np.unique(np.asarray(vectors, dtype=np.int64), axis=0)
    arr = arr[np.argsort(arr.sum(axis=1), kind="stable")]
    kept = np.empty((0, arr.shape[1]), dtype=np.int64)
    for v in arr:
        # anything kept so far has total degree <= deg(v)
        if len(kept) and np.any(np.all(kept <= v, axis=1)):
            continue
        kept = np.vstack([kept, v])
    return tuple(sorted(tuple(int(x) for x in v) for v in kept))


@dataclass(frozen=True)
class MonomialIdeal:
    d: int
    gens: tuple

    def __init__(self, d, gens):
        gens = [tuple(int(x) for x in g) for g in gens]
        if not gens:
            raise ValueError("the zero ideal is not supported; give at least one generator")
        if any(len(g) != d for g in gens):
            raise DimensionMismatch(f"generators must have length d={d}")
        if any(x < 0 for g in gens for x in g):
            raise ValueError("exponents must be nonnegative")
        object.__setattr__(self, "d", int(d))
        object.__setattr__(self, "gens", minimalize(gens))

    def __repr__(self):
        return f"MonomialIdeal({self.d}, {list(self.gens)})"

    def __str__(self):
        return "(" + ", ".join(monomial_str(g) for g in self.gens) + ")"

    def __contains__(self, v):
        return contains(self, v)

    def __add__(self, other):
        return ideal_sum(self, other)

    def __mul__(self, other):
        return product(self, other)

    def __pow__(self, n):
        return power(self, n)

    def __le__(self, other):
        return is_subset(self, other)

    def __ge__(self, other):
        return is_subset(other, self)

    @property
    def array(self):
        return np.array(self.gens, dtype=np.int64)

    @property
    def is_unit(self):
        return self.gens == ((0,) * self.d,)

    def to_json(self):
        return {"d": self.d, "gens": [list(g) for g in self.gens]}

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        return cls(int(data["d"]), data["gens"])


def monomial_str(g):
    if not any(g):
        return "1"
    names = VARS if len(g) <= len(VARS) else [f"x{i + 1}" for i in range(len(g))]
    parts = []
    for name, e in zip(names, g):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


_FACTOR = re.compile(r"^([a-z])(\d*)(?:\^(\d+))?$")


def parse_ideal(text, d=None):
    """Parse ``"x^2, y^3"`` / ``"x1^2*x2, x3"`` or ideal JSON into a MonomialIdeal.

    Variables are ``x, y, z, w`` or ``x1..xd``; ``1`` denotes the unit monomial.
    """
    text = text.strip()
    if text.startswith("{"):
        return MonomialIdeal.from_json(text)
    if text.startswith("(") and text.endswith(")"):
        text = text[1:-1]
    monos = []
    top = 0
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            raise ValueError(f"empty generator in {text!r}")
        exps = {}
        if chunk != "1":
            for factor in re.split(r"\s*\*\s*|\s+", chunk):
                m = _FACTOR.match(factor)
                if not m:
                    raise ValueError(f"cannot parse monomial factor {factor!r}")
                letter, idx, e = m.groups()
                if idx:
                    if letter != "x":
                        raise ValueError(f"indexed variables must be x1, x2, ...: {factor!r}")
                    k = int(idx) - 1
                elif letter in VARS:
                    k = VARS.index(letter)
                else:
                    raise ValueError(f"unknown variable {letter!r}")
                exps[k] = exps.get(k, 0) + (int(e) if e else 1)
                top = max(top, k + 1)
        monos.append(exps)
    if d is None:
        d = max(top, 2)
    elif top > d:
        raise DimensionMismatch(f"ideal uses {top} variables but d={d}")
    return MonomialIdeal(d, [[m.get(k, 0) for k in range(d)] for m in monos])


def unit_ideal(d):
    return MonomialIdeal(d, [[0] * d])


def maximal_ideal(d):
    return MonomialIdeal(d, np.eye(d, dtype=int).tolist())


def pure_powers(exps):
    d = len(exps)
    return MonomialIdeal(d, [[a if i == k else 0 for i in range(d)] for k, a in enumerate(exps)])


def _check(*ideals):
    d = ideals[0].d
    for I in ideals[1:]:
        if I.d != d:
            raise DimensionMismatch(f"ideals live in different dimensions: {d} vs {I.d}")
    return d


def member_mask(points, I):
    """Boolean mask: which rows of ``points`` are exponents of monomials in ``I``."""
    pts = np.asarray(points, dtype=np.int64)
    G = I.array
    out = np.zeros(len(pts), dtype=bool)
    step = max(1, 2_000_000 // max(1, len(G) * I.d))
    for s in range(0, len(pts), step):
        chunk = pts[s:s + step]
        out[s:s + step] = np.any(np.all(chunk[:, None, :] >= G[None, :, :], axis=2), axis=1)
    return out


def contains(I, v):
    v = np.asarray(v)
    if len(v) != I.d:
        raise DimensionMismatch(f"exponent vector length {len(v)} != d={I.d}")
    return bool(np.any(np.all(v >= I.array, axis=1)))


def is_subset(I, J):
    """``I ⊆ J``."""
    _check(I, J)
    return bool(member_mask(I.array, J).all())


def equals(I, J):
    _check(I, J)
    return I.gens == J.gens


def ideal_sum(*ideals):
    d = _check(*ideals)
    return MonomialIdeal(d, [g for I in ideals for g in I.gens])


def product(*ideals):
    d = _check(*ideals)

    def mul(A, B):
        S = (A.array[:, None, :] + B.array[None, :, :]).reshape(-1, d)
        return MonomialIdeal(d, S)

    return reduce(mul, ideals)


def power(I, n):
    if n < 0:
        raise ValueError("negative powers are not ideals")
    if n == 0:
        return unit_ideal(I.d)
    out = I
    for _ in range(n - 1):
        out = product(out, I)
    return out


def monomial_factor(I):
    """Exponent of the gcd of the generators."""
    return tuple(int(x) for x in I.array.min(axis=0))


def divide(I, u):
    u = np.asarray(u)
    return MonomialIdeal(I.d, I.array - u)


def is_m_primary(I):
    """True iff every variable has a pure power among the generators."""
    G = I.array
    return all(np.any((G[:, k] > 0) & (np.delete(G, k, axis=1).sum(axis=1) == 0))
               or I.is_unit for k in range(I.d))


def pure_power_bounds(I):
    """For m-primary ``I``: the exponent ``c_k`` with ``x_k^{c_k}`` a generator."""
    out = []
    for k in range(I.d):
        cands = [g[k] for g in I.gens if sum(g) == g[k]]
        if not cands:
            return None
        out.append(min(cands))
    return out


def box_points(upper):
    """All integer points of ``[0, upper_1] x ... x [0, upper_d]`` as an array."""
    grids = np.indices([u + 1 for u in upper], dtype=np.int64)
    return grids.reshape(len(upper), -1).T


def membership_grid(I, upper):
    """Boolean array over ``[0, upper]``: entry ``v`` is True iff ``x^v ∈ I``."""
    shape = tuple(u + 1 for u in upper)
    grid = np.zeros(shape, dtype=bool)
    for g in I.gens:
        if all(x <= u for x, u in zip(g, upper)):
            grid[g] = True
    for k in range(len(upper)):
        grid = np.logical_or.accumulate(grid, axis=k)
    return grid


def minimal_in_box(points, mask, upper):
    """Minimal generators of an up-closed set given by ``mask`` over the box.

    ``points`` must be ``box_points(upper)`` (row-major order).
    """
    shape = tuple(u + 1 for u in upper)
    grid = mask.reshape(shape)
    minimal = grid.copy()
    for k in range(len(upper)):
        shifted = np.zeros_like(grid)
        # shifted[v] = grid[v - e_k] where v_k >= 1
        sl_dst = [slice(None)] * len(upper)
        sl_src = [slice(None)] * len(upper)
        sl_dst[k] = slice(1, None)
        sl_src[k] = slice(None, -1)
        shifted[tuple(sl_dst)] = grid[tuple(sl_src)]
        minimal &= ~shifted
    return points[minimal.reshape(-1)]


def intersect(*ideals):
    d = _check(*ideals)
    bounds = [pure_power_bounds(I) for I in ideals]
    if all(b is not None for b in bounds):
        upper = [max(b[k] for b in bounds) for k in range(d)]
        grid = np.ones(tuple(u + 1 for u in upper), dtype=bool)
        for I in ideals:
            grid &= membership_grid(I, upper)
        return MonomialIdeal(d, minimal_in_box(box_points(upper), grid.reshape(-1), upper))

    def meet(A, B):
        S = np.maximum(A.array[:, None, :], B.array[None, :, :]).reshape(-1, d)
        return MonomialIdeal(d, S)

    return reduce(meet, ideals)


def colon(I, J):
    """``I : J`` = monomials ``v`` with ``v + u ∈ I`` for every generator ``u`` of ``J``."""
    d = _check(I, J)
    bounds = pure_power_bounds(I)
    if bounds is not None:
        # v_k >= c_k already puts v in I : J, so minimal generators lie in [0, c]
        G = J.array
        reach = [b + int(G[:, k].max()) for k, b in enumerate(bounds)]
        big = membership_grid(I, reach)
        mask = np.ones(tuple(b + 1 for b in bounds), dtype=bool)
        for u in G:
            mask &= big[tuple(slice(x, x + b + 1) for x, b in zip(u, bounds))]
        return MonomialIdeal(d, minimal_in_box(box_points(bounds), mask.reshape(-1), bounds))
    quotients = [MonomialIdeal(d, np.maximum(I.array - u, 0)) for u in J.array]
    return intersect(*quotients)


def order(I):
    """Order at the origin: least total degree of a generator."""
    return int(I.array.sum(axis=1).min())


def colength(I):
    """``dim_k k[x]/I`` for an m-primary monomial ideal."""
    bounds = pure_power_bounds(I)
    if bounds is None:
        raise ValueError(f"colength needs an m-primary ideal, got {I}")
    upper = [c - 1 for c in bounds]
    if any(u < 0 for u in upper):
        return 0
    return int((~membership_grid(I, upper)).sum())


def zero_locus_components(I):
    """Maximal coordinate subspaces in ``V(I)``, as sets of coordinates that vanish.

    Each returned frozenset ``S`` means ``{x_j = 0 for j in S}`` is a
    component; its dimension is ``d - |S|``.  Empty list for the unit ideal.
    """
    if I.is_unit:
        return []
    supports = [frozenset(k for k, e in enumerate(g) if e) for g in I.gens]
    covers = []
    for size in range(1, I.d + 1):
        for S in itertools.combinations(range(I.d), size):
            S = frozenset(S)
            if all(S & sup for sup in supports) and not any(c <= S for c in covers):
                covers.append(S)
    return covers
