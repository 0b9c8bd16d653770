"""Colon and length identities for an ideal generated by pure powers.

``J = (x_1^{a_1}, ..., x_d^{a_d})`` is generated by a regular sequence of
length ``d``.  With the convention ``J^t = (1)`` for ``t <= 0`` the checks
compare, for each ``s``:

    J·cl(J^{s-1}) : cl(J^s)   ==  adj(J^{d-s}) + J
    J·adj(J^{s-1}) : adj(J^s) ==  cl(J^{d-s}) + J

together with the matching length equalities, the equivalence of the four
"one step" conditions, the fixed-``s`` corollaries and the threshold law
``J cl(J^{t-1}) = cl(J^t)  <=>  t > d(1 - 1/ord J)``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from ..monomial import (MonomialIdeal, NotFinitelySupported, adjoint_howald,
                        colength, colon, integral_closure, intersect, order,
                        power, principalize, product, pure_powers, unit_ideal)
from .report import CheckReport, ideal_witness, timed


@lru_cache(maxsize=None)
def _cl(J, t):
    return unit_ideal(J.d) if t <= 0 else integral_closure(power(J, t))


@lru_cache(maxsize=None)
def _adj(J, t):
    return unit_ideal(J.d) if t <= 0 else adjoint_howald(power(J, t))


def threshold_holds(d, t, a):
    """``t > d(1 - 1/a)`` in exact arithmetic."""
    return Fraction(t) > d * (1 - Fraction(1, a))


def check_section4(exps, s_range=None) -> CheckReport:
    J = pure_powers(list(exps))
    d = J.d
    if s_range is None:
        s_range = range(-1, d + 3)
    s_range = list(s_range)
    rep = CheckReport("pure-powers", {"J": str(J), "s": [s_range[0], s_range[-1]]})
    with timed(rep):
        try:
            principalize([J])
        except NotFinitelySupported as exc:
            return rep.skip(f"not finitely supported: {exc}")
        cl = lambda t: _cl(J, t)  # noqa: E731
        adj = lambda t: _adj(J, t)  # noqa: E731

        def same(what, A, B, **ctx):
            w = ideal_witness(A, B)
            rep.expect(w is None, what, None if w is None else {**ctx, **w})
            return w is None

        one_step = {}
        for s in s_range:
            J_cl = product(J, cl(s - 1))
            J_adj = product(J, adj(s - 1))
            same("J cl(J^{s-1}) : cl(J^s) == adj(J^{d-s}) + J",
                 colon(J_cl, cl(s)), adj(d - s) + J, s=s)
            same("J adj(J^{s-1}) : adj(J^s) == cl(J^{d-s}) + J",
                 colon(J_adj, adj(s)), cl(d - s) + J, s=s)
            lhs = colength(J_cl) - colength(cl(s))
            rhs = colength(adj(d - s) + J)
            rep.expect(lhs == rhs, "length(cl(J^s) / J cl(J^{s-1})) == colength(adj(J^{d-s}) + J)",
                       {"s": s, "lhs": lhs, "rhs": rhs})
            lhs = colength(J_adj) - colength(adj(s))
            rhs = colength(cl(d - s) + J)
            rep.expect(lhs == rhs, "length(adj(J^s) / J adj(J^{s-1})) == colength(cl(J^{d-s}) + J)",
                       {"s": s, "lhs": lhs, "rhs": rhs})
            conds = [
                J_adj == intersect(adj(s), J),
                colon(product(J, cl(d - s - 1)), cl(d - s)) == colon(J, cl(d - s)),
                product(J, cl(d - s - 1)) == intersect(cl(d - s), J),
                colon(J_adj, adj(s)) == colon(J, adj(s)),
            ]
            one_step[s] = conds
            rep.expect(len(set(conds)) == 1, "the four one-step conditions agree", {"s": s, "conditions": conds})
            if s >= 1:
                rep.expect((J_adj == adj(s)) == (s >= d), "J adj(J^{s-1}) == adj(J^s) iff s >= d",
                           {"s": s, "equal": J_adj == adj(s)})
        rep.details["one_step_conditions"] = {str(s): c[0] for s, c in one_step.items()}

        same("J adj(J^{d-2}) == adj(J^{d-1}) ∩ J", product(J, adj(d - 2)), intersect(adj(d - 1), J))
        same("J cl(J^{d-2}) == cl(J^{d-1}) ∩ J", product(J, cl(d - 2)), intersect(cl(d - 1), J))
        same("J adj(J^{d-3}) == adj(J^{d-2}) ∩ J", product(J, adj(d - 3)), intersect(adj(d - 2), J))

        a = order(J)
        law = {}
        for t in range(1, d + 3):
            equal = product(J, cl(t - 1)) == cl(t)
            law[t] = equal
            rep.expect(equal == threshold_holds(d, t, a), "J cl(J^{t-1}) == cl(J^t) iff t > d(1-1/ord J)",
                       {"t": t, "equal": equal, "ord": a})
        rep.details["threshold"] = {str(t): v for t, v in law.items()}

        JI = colon(J, cl(1))
        same("J : cl(J) == adj(J^{d-1}) + J", JI, adj(d - 1) + J)
        same("J : cl(J) == adj(cl(J)^{d-1}) + J", JI, adjoint_howald(power(cl(1), d - 1)) + J)
        if not J.is_unit and d >= 2:
            strict = adj(d - 1) != intersect(adj(d - 1), J)
            rep.expect(strict, "adj(J^{d-1}) ∩ J != adj(J^{d-1})", None)
    return rep


def threshold_witness(exps, t):
    """A monomial of ``cl(J^t)`` outside ``J cl(J^{t-1})``, or None."""
    J = pure_powers(list(exps))
    A, B = _cl(J, t), product(J, _cl(J, t - 1))
    for g in A.gens:
        if g not in B:
            return g
    return None


def is_pure_power_ideal(I: MonomialIdeal):
    return len(I.gens) == I.d and all(sum(1 for x in g if x) == 1 for g in I.gens)
