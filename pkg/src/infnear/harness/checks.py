"""Executable checks tying the constellation formulas, the Newton-polyhedron
oracle and the toric section/cohomology computations together."""

from __future__ import annotations

from ..constellation import (DivisorStar, adjoint_basis, canonical_divisor,
                             from_star, is_full, product_basis)
from ..monomial import (MonomialIdeal, NotFinitelySupported, adjoint_howald,
                        integral_closure, is_m_primary, maximal_ideal, order,
                        principalize, product)
from ..toric import (adjoint_via_sections, cech_dims, divisor_rays,
                     fiber_rays, injectivity_check)
from .report import (FAIL, INCONCLUSIVE, CheckReport, ideal_witness,
                     inclusion_witness, timed)


def _inputs(**ideals):
    return {k: str(v) if isinstance(v, MonomialIdeal) else v for k, v in ideals.items()}


def _principalize_or_skip(report, ideals):
    try:
        return principalize(ideals)
    except NotFinitelySupported as exc:
        report.skip(f"not finitely supported: {exc}")
        return None


def _compare(report, what, A, B):
    w = ideal_witness(A, B)
    report.expect(w is None, what, w)


def check_adjoint_theorem(I: MonomialIdeal) -> CheckReport:
    """Adjoint of a finitely supported ideal: three routes plus its point basis."""
    rep = CheckReport("adjoint", _inputs(I=I))
    with timed(rep):
        if not is_m_primary(I):
            return rep.skip("ideal is not m-primary")
        tree = _principalize_or_skip(rep, [I])
        if tree is None:
            return rep
        d = I.d
        adj = adjoint_howald(I)
        rep.details["adjoint"] = str(adj)
        rep.details["basis"] = list(tree.basis.basis)
        _compare(rep, "adjoint_howald == adjoint_via_sections", adj, adjoint_via_sections(tree))
        try:
            joint = principalize([I, adj])
        except NotFinitelySupported as exc:
            rep.fail("adjoint is finitely supported", exc.to_json())
            return rep
        expected = adjoint_basis(joint.bases[0], d)
        rep.details["adjoint_basis"] = list(joint.bases[1].basis)
        rep.expect(joint.bases[1] == expected, "point basis of adjoint == max(r+1-d, 0)",
                   {"basis_I": list(joint.bases[0].basis), "basis_adj": list(joint.bases[1].basis),
                    "expected": list(expected.basis)})
        rep.expect(order(adj) == max(order(I) + 1 - d, 0), "ord(adjoint) == max(ord I + 1 - d, 0)",
                   {"ord_I": order(I), "ord_adj": order(adj)})
        _compare(rep, "adjoint is integrally closed", integral_closure(adj), adj)
        rep.expect(adj.is_unit == (order(I) < d), "adjoint is the unit ideal iff ord I < d",
                   {"ord_I": order(I), "adjoint": str(adj)})
    return rep


def check_transform_commutes(I: MonomialIdeal) -> CheckReport:
    """Adjoint of the transform equals the transform of the adjoint at every tree point."""
    rep = CheckReport("transform", _inputs(I=I))
    with timed(rep):
        if not is_m_primary(I):
            return rep.skip("ideal is not m-primary")
        if _principalize_or_skip(rep, [I]) is None:
            return rep
        adj = adjoint_howald(I)
        tree = _principalize_or_skip(rep, [I, adj])
        if tree is None:
            return rep
        checked = 0
        for beta in range(1, tree.constellation.r):
            I_beta, adj_beta = tree.transforms[beta]
            lhs = adjoint_howald(I_beta)
            w = ideal_witness(lhs, adj_beta)
            if w is not None:
                rep.fail(f"adj(I^beta) == (adj I)^beta at point {beta + 1}",
                         {"point": beta + 1, "chart_path": [p + 1 for p in tree.paths[beta]],
                          "I_beta": str(I_beta), "adj_of_transform": str(lhs),
                          "transform_of_adj": str(adj_beta), **w})
            checked += 1
        rep.details["points_checked"] = checked
    return rep


def _orders(tree, k):
    return tree.bases[k].basis


def check_prop_3_3(I: MonomialIdeal, J: MonomialIdeal) -> CheckReport:
    """``adj(IJ) = I adj(J)`` when ``ord(J^b) >= (d-1) ord(I^b)`` at every point."""
    rep = CheckReport("adj-product", _inputs(I=I, J=J))
    with timed(rep):
        IJ = product(I, J)
        tree = _principalize_or_skip(rep, [I, J, IJ])
        if tree is None:
            return rep
        d = I.d
        rI, rJ = _orders(tree, 0), _orders(tree, 1)
        bad = [b for b in range(tree.constellation.r) if rJ[b] < (d - 1) * rI[b]]
        if bad:
            return rep.skip(f"ord(J^b) < (d-1) ord(I^b) at points {[b + 1 for b in bad]}")
        _compare(rep, "adj(IJ) == I adj(J)", adjoint_howald(IJ), product(I, adjoint_howald(J)))
    return rep


def check_pullout(J: MonomialIdeal) -> CheckReport:
    """``adj(mJ) = m adj(J)`` when ``ord J >= d-1``."""
    rep = CheckReport("pullout", _inputs(J=J))
    with timed(rep):
        d = J.d
        if order(J) < d - 1:
            return rep.skip(f"ord J = {order(J)} < d-1")
        if _principalize_or_skip(rep, [J]) is None:
            return rep
        m = maximal_ideal(d)
        _compare(rep, "adj(mJ) == m adj(J)", adjoint_howald(product(m, J)), product(m, adjoint_howald(J)))
    return rep


def check_subadditivity(I: MonomialIdeal, J: MonomialIdeal) -> CheckReport:
    """``closure(adj(I) adj(J)) ⊇ adj(IJ)``, plus the basis-level inequality behind it."""
    rep = CheckReport("subadditivity", _inputs(I=I, J=J))
    with timed(rep):
        IJ = product(I, J)
        tree = _principalize_or_skip(rep, [I, J, IJ])
        if tree is None:
            return rep
        lhs = integral_closure(product(adjoint_howald(I), adjoint_howald(J)))
        w = inclusion_witness(adjoint_howald(IJ), lhs)
        rep.expect(w is None, "adj(IJ) ⊆ closure(adj(I) adj(J))", w)
        a = product_basis(adjoint_basis(tree.bases[0]), adjoint_basis(tree.bases[1]))
        b = adjoint_basis(tree.bases[2])
        bad = [i for i in range(tree.constellation.r) if a.basis[i] > b.basis[i]]
        rep.expect(not bad, "adjoint bases: B(adj I)+B(adj J) <= B(adj IJ)",
                   {"points": [i + 1 for i in bad]})
    return rep


def check_product_cor(I: MonomialIdeal, J: MonomialIdeal) -> CheckReport:
    """``adj(IJ) ⊇ closure(I adj J)``, equal iff ``ord(J^b) >= d-1`` at each base point of I."""
    rep = CheckReport("product", _inputs(I=I, J=J))
    with timed(rep):
        tree = _principalize_or_skip(rep, [I, J])
        if tree is None:
            return rep
        d = I.d
        big = adjoint_howald(product(I, J))
        small = integral_closure(product(I, adjoint_howald(J)))
        w = inclusion_witness(small, big)
        rep.expect(w is None, "closure(I adj J) ⊆ adj(IJ)", w)
        rI, rJ = _orders(tree, 0), _orders(tree, 1)
        condition = all(rJ[b] >= d - 1 for b in range(tree.constellation.r) if rI[b] > 0)
        equal = big == small
        rep.details["order_condition"] = condition
        rep.details["equal"] = equal
        rep.expect(equal == condition, "equality iff ord(J^b) >= d-1 at every base point of I",
                   {"condition": condition, "equal": equal,
                    "difference": ideal_witness(big, small)})
    return rep


def check_vanishing(I: MonomialIdeal, star=None, ns=(1, 2), window=8) -> CheckReport:
    """Vanishing and injectivity for a full divisor on the principalization of ``I``.

    ``star`` gives the divisor in E*-coordinates (nonnegative = full); by
    default the divisor of ``I`` itself.
    """
    rep = CheckReport("vanishing", _inputs(I=I, star=list(star) if star is not None else None))
    with timed(rep):
        tree = _principalize_or_skip(rep, [I])
        if tree is None:
            return rep
        C = tree.constellation
        d = I.d
        star = list(tree.basis.basis) if star is None else list(star)
        D = from_star(DivisorStar(C, star))
        rep.details["divisor"] = list(D.coeffs)
        if not is_full(D):
            return rep.skip("divisor is not full")
        a = divisor_rays(tree, D.coeffs)
        report = cech_dims(tree.fan, a, window=window)
        rep.details["dims"] = report.dims
        rep.details["window"] = report.window
        if not report.certified:
            rep.verdict = INCONCLUSIVE
            rep.details["status"] = report.status
            return rep
        for i in range(1, d - 1):
            if report.dims[i]:
                w = next((m for m, h in report.support.items() if h.get(i)), None)
                rep.fail(f"H^{i}(O(D)) == 0", {"weight": list(w) if w else None, "dim": report.dims[i]})
        e = fiber_rays(tree)
        for n in ns:
            inj = injectivity_check(tree.fan, a, e, n, window=window)
            if not inj.certified:
                rep.verdict = INCONCLUSIVE if rep.verdict != FAIL else FAIL
            elif not inj.injective:
                rep.fail(f"H^{d - 1}(O(D)) -> H^{d - 1}(O(D+{n}E)) injective", {"weight": list(inj.failures[0])})
        gr = cech_dims(tree.fan, [0] * len(tree.fan.rays), window=window)
        rep.expect(gr.certified and not any(gr.dims.values()), "H^i(O_X) == 0 for i > 0", gr.dims)
    return rep


def check_duality(I: MonomialIdeal, window=8) -> CheckReport:
    """``h^{d-1}(O(D_I)) = colength(adj I)`` and ``h^{d-1}(O(D_I + K)) = colength(closure I)``."""
    from ..monomial import colength

    rep = CheckReport("duality", _inputs(I=I))
    with timed(rep):
        tree = _principalize_or_skip(rep, [I])
        if tree is None:
            return rep
        d = I.d
        v = tree.valuations()
        K = canonical_divisor(tree.constellation).coeffs
        r1 = cech_dims(tree.fan, divisor_rays(tree, v), degrees=[d - 1], window=window)
        r2 = cech_dims(tree.fan, divisor_rays(tree, [a + b for a, b in zip(v, K)]), degrees=[d - 1], window=window)
        if not (r1.certified and r2.certified):
            rep.verdict = INCONCLUSIVE
            return rep
        ca, cc = colength(adjoint_howald(I)), colength(integral_closure(I))
        rep.details.update({"h_D": r1.dims[d - 1], "colength_adj": ca,
                            "h_D_plus_K": r2.dims[d - 1], "colength_closure": cc})
        rep.expect(r1.dims[d - 1] == ca, "h^{d-1}(O(D_I)) == colength(adj I)", {"h": r1.dims[d - 1], "colength": ca})
        rep.expect(r2.dims[d - 1] == cc, "h^{d-1}(O(D_I+K)) == colength(closure I)", {"h": r2.dims[d - 1], "colength": cc})
    return rep


def check_discrepancy(I: MonomialIdeal) -> CheckReport:
    """Toric discrepancy ``|v|-1`` of each exceptional ray equals the canonical-divisor coefficient."""
    rep = CheckReport("discrepancy", _inputs(I=I))
    with timed(rep):
        tree = _principalize_or_skip(rep, [I])
        if tree is None:
            return rep
        K = canonical_divisor(tree.constellation).coeffs
        ex = tree.fan.exceptional_rays()
        for i, k in enumerate(K):
            ray = tree.fan.rays[ex[i]]
            rep.expect(sum(ray) - 1 == k, f"|v|-1 == K coefficient at point {i + 1}", {"ray": list(ray), "K": k})
        rep.expect(not tree.verify(), "principalization invariants", tree.verify())
    return rep
