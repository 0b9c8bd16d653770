"""Acceptance criteria, one test per criterion.

Each test prints a single ``ACCEPTANCE <n> PASS|FAIL ...`` line (visible in
``pytest -v`` output) and then asserts.  Run ``python tests/test_acceptance.py``
to get just the seven lines.
"""

import itertools
import random
import sys
import time
from fractions import Fraction

import oracles
from infnear.constellation import (Constellation, DivisorE, DivisorStar,
                                   PointBasis, adjoint_basis,
                                   canonical_divisor, from_star, is_full,
                                   product_basis, proximity_matrix, to_star)
from infnear.harness import check_section4
from infnear.harness.checks import (check_adjoint_theorem, check_discrepancy,
                                    check_duality, check_prop_3_3,
                                    check_pullout)
from infnear.harness.report import PASS
from infnear.harness.pure_powers import threshold_witness
from infnear.harness.suites import d3_ideal, random_m_primary
from infnear.monomial import (NotFinitelySupported, adjoint_howald, colon,
                              contains, integral_closure, intersect,
                              maximal_ideal, np_member, order, parse_ideal,
                              power, principalize, product, pure_powers)
from infnear.toric import adjoint_via_sections, cech_dims, divisor_rays
from infnear.toric.cohomology import fiber_rays, injectivity_check

SEED = 20240601
PER_CASE_LIMIT = 10.0


def announce(n, ok, detail, capsys=None):
    line = f"ACCEPTANCE {n} {'PASS' if ok else 'FAIL'} {detail}"
    if capsys is not None:
        with capsys.disabled():
            print("\n" + line)
    else:
        print(line)
    return line


# -- 1 ------------------------------------------------------------------------

def criterion_1():
    I = parse_ideal("x^2, y^3")
    T = principalize([I])
    C = T.constellation
    p, inv = proximity_matrix(C)
    m = maximal_ideal(2)
    formula = principalize([I, adjoint_howald(I)]).bases[1].basis == adjoint_basis(T.basis).basis == (1, 0, 0)
    checks = {
        "basis": T.basis.basis == (2, 1, 1),
        "p": p == [[1, -1, -1], [0, 1, -1], [0, 0, 1]],
        "p_inv": inv == [[1, 1, 2], [0, 1, 1], [0, 0, 1]],
        "K": canonical_divisor(C).coeffs == (1, 2, 4),
        "valuations": T.valuations() == (2, 3, 6) == T.ray_valuations(I),
        "adjoint_formula": formula,
        "adjoint_sections": adjoint_via_sections(T) == m,
        "adjoint_howald": adjoint_howald(I) == m,
    }
    bad = [k for k, v in checks.items() if not v]
    return not bad, f"cusp fixtures: {len(checks) - len(bad)}/{len(checks)} exact" + (f" failing {bad}" if bad else "")


# -- 2 ------------------------------------------------------------------------

def criterion_2(n2=50, n3=20, seed=SEED):
    rng = random.Random(seed)
    cases = [random_m_primary(rng, 2, max_exp=8) for _ in range(n2)]
    cases += [d3_ideal(rng) for _ in range(n3)]
    failures, slow, worst = [], [], 0.0
    for I in cases:
        rep = check_adjoint_theorem(I)
        worst = max(worst, rep.seconds)
        if rep.verdict != PASS:
            failures.append((str(I), rep.verdict, rep.witnesses[:1]))
        if rep.seconds > PER_CASE_LIMIT:
            slow.append(str(I))
    ok = not failures and not slow
    return ok, (f"{len(cases) - len(failures)}/{len(cases)} adjoint checks pass "
                f"({n2} d=2, {n3} d=3, seed {seed}, slowest {worst:.2f}s)"
                + (f" first failure {failures[0]}" if failures else "") + (f" slow {slow}" if slow else ""))


# -- 3 ------------------------------------------------------------------------

def criterion_3():
    try:
        principalize([parse_ideal("x^2, y^2, z^3")])
    except NotFinitelySupported as exc:
        w = exc.to_json()
        ok = w["depth"] == 2 and w["dimension"] == 1 and w["chart_path"] == [3, 1]
        return ok, f"witness in chart {w['chart_path']} at depth {w['depth']}, locus {w['zero_locus']}"
    return False, "no NotFinitelySupported raised"


# -- 4 ------------------------------------------------------------------------

def pure_power_cases(max_a=4):
    for d in (2, 3):
        for exps in itertools.product(range(1, max_a + 1), repeat=d):
            if list(exps) == sorted(exps):
                yield list(exps)


def criterion_4():
    ran, skipped, failures, worst = 0, [], [], 0.0
    for exps in pure_power_cases():
        d = len(exps)
        rep = check_section4(exps, s_range=range(-1, d + 3))
        worst = max(worst, rep.seconds)
        if rep.verdict == "skipped-precondition":
            skipped.append(exps)
            continue
        ran += 1
        if rep.verdict != PASS or rep.seconds > PER_CASE_LIMIT:
            failures.append((exps, rep.witnesses[:1], round(rep.seconds, 2)))
    # hand-checked fixtures
    m = maximal_ideal(3)
    J2 = pure_powers([2, 2, 2])
    J3 = pure_powers([3, 3, 3])
    fixtures = {
        "(x2,y2,z2) s=1": colon(J2, integral_closure(J2)) == power(m, 2) == adjoint_howald(power(J2, 2)) + J2,
        "(x3,y3,z3) t=3": product(J3, power(m, 6)) == power(m, 9) == integral_closure(power(J3, 3)),
        "(x3,y3,z3) t=2": product(J3, power(m, 3)) != power(m, 6) and threshold_witness([3, 3, 3], 2) == (2, 2, 2),
        "J adj(J) = adj(J^2) ∩ J": (adjoint_howald(J3) == m and adjoint_howald(power(J3, 2)) == power(m, 4)
                                    and product(J3, m) == intersect(power(m, 4), J3)),
    }
    bad = [k for k, v in fixtures.items() if not v]
    ok = ran > 0 and not failures and not bad
    return ok, (f"{ran - len(failures)}/{ran} pure-power ideals pass for s in [-1, d+2], "
                f"{len(fixtures) - len(bad)}/{len(fixtures)} fixtures, "
                f"{len(skipped)} skipped as not finitely supported, slowest {worst:.2f}s"
                + (f" failures {failures[:2]}" if failures else "") + (f" bad fixtures {bad}" if bad else ""))


# -- 5 ------------------------------------------------------------------------

def small_trees(rng, count, max_chain=3, max_points=5):
    """Distinct d=3 constellations whose longest chain has at most ``max_chain`` points."""
    seen, out = set(), []
    for _ in range(2000):
        I = d3_ideal(rng)
        T = principalize([I])
        C = T.constellation
        key = (C.parents, C.prox)
        if key in seen or C.r > max_points or max(C.depth(i) for i in range(C.r)) + 1 > max_chain:
            continue
        seen.add(key)
        out.append((I, T))
        if len(out) == count:
            break
    return out


def criterion_5(n_trees=6, per_tree=2, max_star=3, seed=SEED):
    """Full divisors drawn as uniform star vectors in [0, max_star]^r."""
    rng = random.Random(seed)
    trees = small_trees(rng, n_trees)
    rows = []
    for I, T in trees:
        C = T.constellation
        t0 = time.perf_counter()
        e = fiber_rays(T)
        gr = cech_dims(T.fan, [0] * len(T.fan.rays))
        gr_ok = gr.certified and not any(gr.dims.values())
        for _ in range(per_tree):
            star = [rng.randint(0, max_star) for _ in range(C.r)]
            D = from_star(DivisorStar(C, star))
            assert is_full(D)
            a = divisor_rays(T, D.coeffs)
            rep = cech_dims(T.fan, a)
            h1_ok = rep.certified and rep.dims[1] == 0
            inj = [injectivity_check(T.fan, a, e, n) for n in (1, 2)]
            inj_ok = all(r.verdict == "pass" for r in inj)
            wit = next(((r.n, r.failures[0]) for r in inj if r.failures), None)
            rows.append({"ideal": str(I), "star": star, "h1": h1_ok, "inj": inj_ok, "gr": gr_ok,
                         "witness": wit, "certified": rep.certified and all(r.certified for r in inj)})
        rows[-1]["seconds"] = time.perf_counter() - t0
    n = len(rows)
    h1 = sum(r["h1"] for r in rows)
    inj = sum(r["inj"] for r in rows)
    gr = all(r["gr"] for r in rows)
    slow = [r for r in rows if r.get("seconds", 0) > 60]
    ok = n >= 10 and h1 == n and inj == n and gr and not slow
    first = next((r for r in rows if not r["inj"]), None)
    detail = (f"{n} full divisors on {len(trees)} trees (seed {seed}): H^1=0 certified {h1}/{n}, "
              f"injectivity n=1,2 {inj}/{n}, D=0 acyclic {gr}")
    if first:
        detail += f"; first injectivity failure {first['ideal']} star {first['star']} n,weight {first['witness']}"
    return ok, detail, rows


# -- 6 ------------------------------------------------------------------------

DUALITY_FIXTURES = ["x^2, y^3", "x^3, x*y, y^4", "x^5, x^2*y^2, y^7", "x^4, y^6",
                    "x, y, z^3", "x^2, x*y, y^2, x*z, y*z, z^3",
                    "x^3, x^2*y, x*y^2, y^3, x^2*z, x*y*z, y^2*z, x*z^2, y*z^2, z^4"]


def criterion_6():
    bad = []
    for text in DUALITY_FIXTURES:
        I = parse_ideal(text)
        rep = check_duality(I)
        bound = int(max(max(g) for g in I.gens)) + 2
        ca = oracles.brute_colength(adjoint_howald(I).gens, bound)
        cc = oracles.brute_colength(integral_closure(I).gens, bound)
        if rep.verdict != PASS or rep.details["h_D"] != ca or rep.details["h_D_plus_K"] != cc:
            bad.append((text, rep.verdict, rep.details))
    n = len(DUALITY_FIXTURES)
    return not bad, f"{n - len(bad)}/{n} fixtures: h^(d-1) equals brute-force colengths" + (f" bad {bad[:1]}" if bad else "")


# -- 7 ------------------------------------------------------------------------

def random_constellation(rng, max_r=7):
    d = rng.randint(2, 4)
    r = rng.randint(1, max_r)
    parents, prox = [None], [frozenset()]
    for i in range(1, r):
        par = rng.randrange(i)
        anc = sorted(set([par]) | _ancestors(parents, par)) if i else []
        others = [j for j in anc if j != par]
        extra = rng.sample(others, rng.randint(0, min(len(others), d - 1)))
        parents.append(par)
        prox.append(frozenset([par, *extra]))
    return Constellation(d, parents, prox)


def _ancestors(parents, i):
    out = set()
    j = parents[i]
    while j is not None:
        out.add(j)
        j = parents[j]
    return out


def _stars(rng, C, hi=12):
    return [rng.randint(0, hi) for _ in range(C.r)]


def prop_fullness(rng):
    C = random_constellation(rng)
    D1, D2 = from_star(DivisorStar(C, _stars(rng, C))), from_star(DivisorStar(C, _stars(rng, C)))
    c = Fraction(rng.randint(0, 20), rng.randint(1, 6))
    return is_full(D1 + D2) and is_full(D1.floor_scale(c))


def prop_prox_inverse(rng):
    C = random_constellation(rng)
    p, inv = proximity_matrix(C)
    r = C.r
    ident = all(sum(p[i][k] * inv[k][j] for k in range(r)) == int(i == j) for i in range(r) for j in range(r))
    v = [rng.randint(-20, 20) for _ in range(r)]
    rt = to_star(from_star(DivisorStar(C, v))).coords == tuple(v) and from_star(to_star(DivisorE(C, v))).coeffs == tuple(v)
    return ident and rt and all(x >= 0 for row in inv for x in row)


def prop_basis_subadditivity(rng):
    C = random_constellation(rng)
    r, s = PointBasis(C, _stars(rng, C)), PointBasis(C, _stars(rng, C))
    lhs = product_basis(adjoint_basis(r), adjoint_basis(s)).basis
    rhs = adjoint_basis(product_basis(r, s)).basis
    return all(a <= b for a, b in zip(lhs, rhs))


def prop_closure(rng):
    I = random_m_primary(rng, rng.randint(2, 3), max_exp=5)
    C = integral_closure(I)
    if integral_closure(C) != C:
        return False
    upper = [int(x) for x in I.array.max(axis=0)]
    return all(contains(C, v) == np_member(v, I)
               for v in itertools.product(*(range(u + 1) for u in upper)))


def _pair_ideal(rng, d):
    return random_m_primary(rng, 2, max_exp=4) if d == 2 else d3_ideal(rng)


def prop_adjoint_product(rng):
    d = rng.choice((2, 2, 3))
    I, K = _pair_ideal(rng, d), _pair_ideal(rng, d)
    if d == 3:
        I = rng.choice([maximal_ideal(3), pure_powers([1, 1, 2]), pure_powers([1, 2, 1])])
    J = product(power(I, d - 1), K)
    return check_prop_3_3(I, J).verdict == PASS


def prop_pullout(rng):
    d = rng.choice((2, 3))
    J = _pair_ideal(rng, d)
    if order(J) < d - 1:
        J = product(J, maximal_ideal(d))
    return check_pullout(J).verdict == PASS


def prop_product_basis(rng):
    d = rng.choice((2, 3))
    I, J = _pair_ideal(rng, d), _pair_ideal(rng, d)
    T = principalize([I, J, product(I, J)])
    return product_basis(T.bases[0], T.bases[1]) == T.bases[2]


def prop_discrepancy(rng):
    d = rng.choice((2, 3))
    return check_discrepancy(_pair_ideal(rng, d)).verdict == PASS


PROPERTIES = {
    "fullness closed under sum and floor-scaling": prop_fullness,
    "p^-1 >= 0 and star roundtrips": prop_prox_inverse,
    "basis-level subadditivity": prop_basis_subadditivity,
    "closure idempotent, membership iff NP": prop_closure,
    "adj(IJ) = I adj(J) on J = I^(d-1) K": prop_adjoint_product,
    "pullout adj(mJ) = m adj(J), ord J >= d-1": prop_pullout,
    "product point-basis additivity": prop_product_basis,
    "discrepancy |v|-1 = K coefficient": prop_discrepancy,
}


def criterion_7(n=200, seed=SEED):
    results = {}
    for k, (name, fn) in enumerate(PROPERTIES.items()):
        failures = []
        for case in range(n):
            case_seed = seed * 1000 + k * n + case
            if not fn(random.Random(case_seed)):
                failures.append(case_seed)
        results[name] = failures
    bad = {k: v[:3] for k, v in results.items() if v}
    ok = not bad
    return ok, (f"{len(PROPERTIES) - len(bad)}/{len(PROPERTIES)} properties hold on {n} cases each "
                f"(case seed = {seed}*1000 + property*{n} + case)" + (f" failing seeds {bad}" if bad else ""))


# -- pytest -------------------------------------------------------------------

def _timed(fn, *args):
    t0 = time.perf_counter()
    out = fn(*args)
    return out, time.perf_counter() - t0


def test_criterion_1_cusp(capsys):
    (ok, detail), dt = _timed(criterion_1)
    announce(1, ok and dt < PER_CASE_LIMIT, f"{detail} [{dt:.2f}s]", capsys)
    assert ok and dt < PER_CASE_LIMIT, detail


def test_criterion_2_adjoint_sweep(capsys):
    ok, detail = criterion_2()
    announce(2, ok, detail, capsys)
    assert ok, detail


def test_criterion_3_not_finitely_supported(capsys):
    (ok, detail), dt = _timed(criterion_3)
    announce(3, ok and dt < PER_CASE_LIMIT, f"{detail} [{dt:.2f}s]", capsys)
    assert ok and dt < PER_CASE_LIMIT, detail


def test_criterion_4_pure_powers(capsys):
    ok, detail = criterion_4()
    announce(4, ok, detail, capsys)
    assert ok, detail


def test_criterion_5_vanishing_and_injectivity(capsys):
    ok, detail, _ = criterion_5()
    announce(5, ok, detail, capsys)
    assert ok, detail


def test_criterion_6_duality(capsys):
    (ok, detail), dt = _timed(criterion_6)
    announce(6, ok, f"{detail} [{dt:.2f}s]", capsys)
    assert ok, detail


def test_criterion_7_properties(capsys):
    ok, detail = criterion_7()
    announce(7, ok, detail, capsys)
    assert ok, detail


if __name__ == "__main__":
    outcomes = []
    for n, fn in enumerate([criterion_1, criterion_2, criterion_3, criterion_4,
                            criterion_5, criterion_6, criterion_7], start=1):
        res = fn()
        announce(n, res[0], res[1])
        outcomes.append(res[0])
    sys.exit(0 if all(outcomes) else 1)
