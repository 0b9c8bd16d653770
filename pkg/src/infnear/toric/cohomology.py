"""Global sections and weight-graded Čech cohomology of ``O_X(D)`` on a fan.

``D`` is given by one integer coefficient ``a_ρ`` per ray.  In weight
``m ∈ Z^d`` the sections of ``O_X(D)`` over the chart of a cone ``τ`` are
one-dimensional when ``<m, v_ρ> >= -a_ρ`` for every ray ``ρ`` of ``τ`` and
zero otherwise.  So, per weight, only the set of violated ("bad") rays
matters; the Čech complex of the maximal-cone cover is built once per
distinct bad set and its ranks are computed exactly over Q.

Cohomology in positive degree is only ever computed on a finite window of
weights.  A window counts as certified when no weight on its boundary
shell contributes, and is otherwise doubled up to ``NPC_WINDOW_CAP``.
"""

from __future__ import annotations

import itertools
import os
import time
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .._exact import nullspace, rank
from ..constellation import canonical_divisor, fiber_divisor
from ..monomial.ideal import MonomialIdeal, box_points, minimal_in_box
from .fan import Fan

DEFAULT_WINDOW_CAP = 64


class UnboundedSections(ValueError):
    pass


def window_cap():
    return int(os.environ.get("NPC_WINDOW_CAP", DEFAULT_WINDOW_CAP))


def sections_ideal(fan: Fan, a) -> MonomialIdeal:
    """``{m : <m, v_ρ> >= -a_ρ for all ρ}`` as a monomial ideal.

    Requires ``a_ρ <= 0`` on the coordinate rays, otherwise the weight set
    leaves ``Z^d_{>=0}`` and is not an ideal.
    """
    d = fan.d
    axis = fan.axis_rays()
    lower = [-a[axis[k]] for k in range(d)]
    if any(lo < 0 for lo in lower):
        raise UnboundedSections(
            f"positive coefficient on a coordinate ray: sections include negative weights (lower bounds {lower})")
    R = np.array(fan.rays, dtype=np.int64)
    rhs = -np.array(a, dtype=np.int64)
    # past coordinate k's bound every exceptional inequality is already
    # satisfied by x_k alone, so minimal generators live below it
    upper = []
    for k in range(d):
        t = lower[k]
        for j, ray in enumerate(fan.rays):
            if ray[k] > 0:
                t = max(t, -(-rhs[j] // ray[k]))
        upper.append(int(t))
    shift = np.array(lower)
    span = [u - lo for u, lo in zip(upper, lower)]
    pts = box_points(span)
    mask = np.all((pts + shift) @ R.T >= rhs, axis=1)
    gens = minimal_in_box(pts, mask, span) + shift
    if len(gens) == 0:
        raise UnboundedSections("no sections found in the bounding box")
    return MonomialIdeal(d, gens)


def adjoint_via_sections(tree, k=0) -> MonomialIdeal:
    """Sections of ``I·ω_f`` on the principalization: the adjoint ideal by definition."""
    C = tree.constellation
    K = canonical_divisor(C).coeffs
    v = tree.valuations(k)
    a = tree.fan.ray_coefficients([kc - vc for kc, vc in zip(K, v)])
    return _restore_factor(sections_ideal(tree.fan, a), tree.factors[k])


def closure_via_sections(tree, k=0) -> MonomialIdeal:
    """Sections of ``I·O_X``: the integral closure."""
    v = tree.valuations(k)
    a = tree.fan.ray_coefficients([-x for x in v])
    return _restore_factor(sections_ideal(tree.fan, a), tree.factors[k])


def _restore_factor(I, factor):
    if not any(factor):
        return I
    return MonomialIdeal(I.d, I.array + np.array(factor))


def divisor_rays(tree, coeffs):
    """Ray coefficients of an exceptional divisor given by E-coefficients."""
    return tree.fan.ray_coefficients(coeffs)


def fiber_rays(tree):
    return tree.fan.ray_coefficients(fiber_divisor(tree.constellation).coeffs)


def canonical_rays(tree):
    return tree.fan.ray_coefficients(canonical_divisor(tree.constellation).coeffs)


class CechComplex:
    """Alternating Čech complex of the maximal-cone cover, weight by weight."""

    def __init__(self, fan: Fan, top):
        self.fan = fan
        self.top = top  # highest cochain degree needed
        self._dims = {}
        self._ranks = {}
        K = len(fan.cones)
        cone_sets = [frozenset(c) for c in fan.cones]
        self.levels = []
        for p in range(min(top, K - 1) + 1):
            level = []
            for S in itertools.combinations(range(K), p + 1):
                face = frozenset.intersection(*(cone_sets[i] for i in S))
                level.append((S, face))
            self.levels.append(level)

    def cochains(self, p, bad):
        if p >= len(self.levels):
            return []
        return [S for S, face in self.levels[p] if not (face & bad)]

    def coboundary(self, p, bad, bad_target=None):
        """Sparse rows of ``δ^p`` restricted to contributing subsets."""
        src = self.cochains(p, bad)
        dst = self.cochains(p + 1, bad if bad_target is None else bad_target)
        index = {S: j for j, S in enumerate(src)}
        rows = []
        for T in dst:
            row = {}
            for j in range(len(T)):
                S = T[:j] + T[j + 1:]
                if S in index:
                    row[index[S]] = (-1) ** j
            rows.append(row)
        return rows, src, dst

    def dims(self, bad, degrees):
        key = (bad, tuple(degrees))
        if key not in self._dims:
            self._dims[key] = {i: len(self.cochains(i, bad)) - self._rank(i, bad) - self._rank(i - 1, bad)
                               for i in degrees}
        return self._dims[key]

    def _rank(self, p, bad):
        if p < 0:
            return 0
        if (p, bad) not in self._ranks:
            self._ranks[(p, bad)] = rank(self.coboundary(p, bad)[0])
        return self._ranks[(p, bad)]

    def injective_on(self, bad, bad_big, q):
        """Whether ``H^q`` of the weight complex for ``bad`` injects into the one for ``bad_big``.

        ``bad_big`` must be a subset of ``bad`` (the larger divisor violates fewer
        rays), so the first complex is a subcomplex of the second.  Injective
        iff ``ker δ^q_small ∩ im δ^{q-1}_big = im δ^{q-1}_small``.
        """
        if q < 1:
            raise ValueError("q must be positive")
        rows, src, _ = self.coboundary(q, bad)
        Z = nullspace(rows, len(src))
        rows_prev, src_prev, dst_big = self.coboundary(q - 1, bad_big)
        pos = {S: j for j, S in enumerate(dst_big)}
        B_big = [dict() for _ in src_prev]
        for t, row in enumerate(rows_prev):
            for j, v in row.items():
                B_big[j][t] = v
        Z_emb = [{pos[src[j]]: v for j, v in enumerate(z) if v} for z in Z]
        dim_B_big = rank(B_big)
        inter = len(Z) + dim_B_big - rank(Z_emb + B_big)
        return inter == self._rank(q - 1, bad)


@lru_cache(maxsize=64)
def _complex_for(fan_key, top):
    d, rays, cones = fan_key
    fan = Fan(d, list(rays), [("E", 0)] * len(rays), list(cones))
    return CechComplex(fan, top)


def _fan_key(fan):
    return (fan.d, tuple(tuple(r) for r in fan.rays), tuple(tuple(c) for c in fan.cones))


def _weights(d, N):
    return box_points([2 * N] * d) - N


def _bad_keys(W, R, a):
    """Integer key per weight encoding the set of violated rays."""
    if R.shape[0] > 62:
        raise ValueError("too many rays for bitmask keys")
    rhs = -np.asarray(a, dtype=np.int64)
    bits = np.int64(1) << np.arange(R.shape[0], dtype=np.int64)
    out = np.empty(len(W), dtype=np.int64)
    step = 200_000
    for s in range(0, len(W), step):
        out[s:s + step] = ((W[s:s + step] @ R.T) < rhs).astype(np.int64) @ bits
    return out


def _key_set(key):
    out = set()
    j = 0
    key = int(key)
    while key:
        if key & 1:
            out.add(j)
        key >>= 1
        j += 1
    return frozenset(out)


@dataclass
class CohomReport:
    divisor: list
    window: int
    dims: dict
    certified: bool
    degrees: list
    support: dict = field(default_factory=dict)
    field_assumption: str = "Q"
    seconds: float = 0.0

    @property
    def status(self):
        return "certified" if self.certified else "window inconclusive"

    def to_json(self):
        return {
            "divisor": list(self.divisor),
            "window": self.window,
            "dims": {str(i): v for i, v in self.dims.items()},
            "certified": self.certified,
            "status": self.status,
            "verification": "windowed",
            "field": self.field_assumption,
            "support": {",".join(map(str, m)): {str(i): v for i, v in h.items()}
                        for m, h in self.support.items()},
            "seconds": round(self.seconds, 3),
        }


def _weight_table(fan, a, degrees, N):
    cx = _complex_for(_fan_key(fan), max(degrees) + 1)
    R = np.array(fan.rays, dtype=np.int64)
    W = _weights(fan.d, N)
    keys = _bad_keys(W, R, a)
    uniq, inverse, counts = np.unique(keys, return_inverse=True, return_counts=True)
    per_key = {int(k): cx.dims(_key_set(k), degrees) for k in uniq}
    shell = np.abs(W).max(axis=1) == N
    return cx, W, keys, uniq, counts, per_key, shell


def cech_dims(fan: Fan, a, max_i=None, window=8, cap=None, degrees=None) -> CohomReport:
    """Dimensions of ``H^i(X, O_X(D))`` for ``i`` in ``degrees`` (default ``1..d-1``)."""
    t0 = time.perf_counter()
    if degrees is None:
        degrees = list(range(1, (fan.d - 1 if max_i is None else max_i) + 1))
    degrees = [i for i in degrees if i >= 1]
    if not degrees:
        raise ValueError("request at least one positive degree")
    cap = window_cap() if cap is None else cap
    N = max(1, window)
    while True:
        _, W, keys, uniq, counts, per_key, shell = _weight_table(fan, a, degrees, N)
        dims = {i: int(sum(c * per_key[int(k)][i] for k, c in zip(uniq, counts))) for i in degrees}
        shell_keys = set(np.unique(keys[shell]).tolist())
        certified = all(per_key[k][i] == 0 for k in shell_keys for i in degrees)
        if certified or N * 2 > cap:
            break
        N *= 2
    support = {}
    nonzero = {k for k, h in per_key.items() if any(h.values())}
    if nonzero and sum(dims.values()) <= 200:
        for w, k in zip(W, keys):
            if int(k) in nonzero:
                support[tuple(int(x) for x in w)] = {i: v for i, v in per_key[int(k)].items() if v}
    return CohomReport(list(a), N, dims, certified, degrees, support, seconds=time.perf_counter() - t0)


@dataclass
class InjectivityReport:
    n: int
    window: int
    certified: bool
    injective: bool
    failures: list  # weights where the map has a kernel

    @property
    def verdict(self):
        if not self.certified:
            return "inconclusive"
        return "pass" if self.injective else "fail"

    def to_json(self):
        return {"n": self.n, "window": self.window, "certified": self.certified,
                "injective": self.injective, "verdict": self.verdict,
                "failures": [list(w) for w in self.failures]}


def injectivity_check(fan: Fan, a, e, n, window=8, cap=None) -> InjectivityReport:
    """Weightwise injectivity of ``H^{d-1}(O(D)) -> H^{d-1}(O(D + nE))``.

    ``a`` and ``e`` are ray coefficients of ``D`` and of the closed fibre ``E``.
    """
    q = fan.d - 1
    big = [x + n * y for x, y in zip(a, e)]
    report = cech_dims(fan, a, degrees=[q], window=window, cap=cap)
    if n == 0:
        return InjectivityReport(n, report.window, report.certified, True, [])
    cx = _complex_for(_fan_key(fan), q + 1)
    R = np.array(fan.rays, dtype=np.int64)
    W = _weights(fan.d, report.window)
    pairs = np.stack([_bad_keys(W, R, a), _bad_keys(W, R, big)], axis=1)
    uniq, inverse = np.unique(pairs, axis=0, return_inverse=True)
    inverse = inverse.reshape(-1)
    bad_pairs = []
    for j, (ks, kb) in enumerate(uniq):
        small = _key_set(ks)
        if cx.dims(small, [q])[q] and not cx.injective_on(small, _key_set(kb), q):
            bad_pairs.append(j)
    failures = [tuple(int(x) for x in w) for w in W[np.isin(inverse, bad_pairs)]]
    return InjectivityReport(n, report.window, report.certified, not failures, failures)
