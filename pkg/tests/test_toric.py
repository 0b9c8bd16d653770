import random

import pytest

import oracles
from infnear.constellation import (PointBasis, canonical_divisor, from_star,
                                   DivisorStar, is_full)
from infnear.harness.suites import d3_ideal, random_m_primary
from infnear.monomial import (adjoint_howald, colength, integral_closure,
                              maximal_ideal, parse_ideal, power, principalize)
from infnear.toric import (adjoint_via_sections, cech_dims, closure_via_sections,
                           divisor_rays)
from infnear.toric.cohomology import (UnboundedSections, fiber_rays,
                                      injectivity_check, sections_ideal)


def tree_of(text):
    return principalize([parse_ideal(text)])


# -- sections -------------------------------------------------------------------

def test_cusp_sections():
    T = tree_of("x^2, y^3")
    assert adjoint_via_sections(T) == maximal_ideal(2)
    assert closure_via_sections(T) == parse_ideal("x^2, x*y^2, y^3")


def test_sections_need_nonpositive_axis_coefficients():
    T = tree_of("x^2, y^3")
    a = [0] * len(T.fan.rays)
    a[T.fan.axis_rays()[0]] = 1
    with pytest.raises(UnboundedSections):
        sections_ideal(T.fan, a)


def _sample(seed, n):
    rng = random.Random(seed)
    return [random_m_primary(rng, 2, 7) if k % 2 else d3_ideal(rng) for k in range(n)]


@pytest.mark.parametrize("I", _sample(5, 30), ids=str)
def test_sections_match_newton_polyhedron(I):
    T = principalize([I])
    assert adjoint_via_sections(T) == adjoint_howald(I)
    assert closure_via_sections(T) == integral_closure(I)


# -- cohomology against the simplicial oracle ----------------------------------

COHOM_CASES = [
    ("x^2, y^3", [2, 3, 6]),
    ("x^2, y^3", [1, 2, 4]),
    ("x^2, y^3", [0, 0, 3]),
    ("x, y^2", [0, 2]),
    ("x, y^2", [1, 0]),
    ("x, y, z^2", [1, 0]),
    ("x, y, z^2", [0, 3]),
    ("x, y, z^2", [2, 3]),
    ("x^2, x*y, y^2, x*z, y*z, z^3", None),
]


@pytest.mark.parametrize("text,coeffs", COHOM_CASES)
def test_cech_matches_oracle(text, coeffs):
    T = tree_of(text)
    coeffs = list(T.valuations()) if coeffs is None else coeffs
    a = divisor_rays(T, coeffs)
    d = T.fan.d
    rep = cech_dims(T.fan, a, window=4)
    assert rep.certified
    totals, support = oracles.cohomology_dims(T.fan, a, rep.window, list(range(1, d)))
    assert {i: totals[i] for i in range(1, d)} == rep.dims
    assert set(support) == set(rep.support)


def test_structure_sheaf_is_acyclic():
    for text in ["x^2, y^3", "x, y, z^2", "x^2, x*y, y^2, x*z, y*z, z^3"]:
        T = tree_of(text)
        rep = cech_dims(T.fan, [0] * len(T.fan.rays))
        assert rep.certified and not any(rep.dims.values())


def test_non_full_divisor_has_middle_cohomology():
    # star coordinates (1, -1): not full, and H^1 survives in d = 3
    T = tree_of("x, y, z^2")
    D = from_star(DivisorStar(T.constellation, [1, -1]))
    assert D.coeffs == (1, 0) and not is_full(D)
    rep = cech_dims(T.fan, divisor_rays(T, D.coeffs))
    assert rep.certified and rep.dims[1] == 1


@pytest.mark.parametrize("text", ["x^2, y^3", "x^3, x*y, y^4", "x^2, x*y, y^2, x*z, y*z, z^3",
                                  "x, y, z^3"])
def test_top_cohomology_is_colength(text):
    I = parse_ideal(text)
    T = principalize([I])
    d = I.d
    v = list(T.valuations())
    K = canonical_divisor(T.constellation).coeffs
    h = cech_dims(T.fan, divisor_rays(T, v), degrees=[d - 1])
    hk = cech_dims(T.fan, divisor_rays(T, [x + y for x, y in zip(v, K)]), degrees=[d - 1])
    assert h.certified and hk.certified
    assert h.dims[d - 1] == colength(adjoint_howald(I))
    assert hk.dims[d - 1] == colength(integral_closure(I))


def test_cusp_top_cohomology_values():
    T = tree_of("x^2, y^3")
    assert cech_dims(T.fan, divisor_rays(T, [2, 3, 6])).dims == {1: 1}
    assert cech_dims(T.fan, divisor_rays(T, [3, 5, 10])).dims == {1: 5}


# -- injectivity --------------------------------------------------------------

@pytest.mark.parametrize("text", ["x^2, y^3", "x, y, z^2", "x^2, x*y, y^2, x*z, y*z, z^3"])
def test_injective_for_divisor_of_an_ideal(text):
    T = tree_of(text)
    a = divisor_rays(T, T.valuations())
    for n in (1, 2):
        assert injectivity_check(T.fan, a, fiber_rays(T), n).verdict == "pass"


def test_full_divisor_where_injectivity_fails_in_dimension_two():
    # two points, the second proximate to the first; D = 2 E_2 has star (0, 2)
    T = tree_of("x, y^2")
    assert T.constellation.prox == (frozenset(), frozenset({0}))
    D = from_star(DivisorStar(T.constellation, [0, 2]))
    assert D.coeffs == (0, 2) and is_full(D)
    a = divisor_rays(T, D.coeffs)
    rep = cech_dims(T.fan, a)
    assert rep.certified and rep.dims == {1: 1}
    assert list(rep.support) == [(-1, 0)]
    for n in (1, 2, 5):
        inj = injectivity_check(T.fan, a, fiber_rays(T), n)
        assert inj.verdict == "fail" and inj.failures == [(-1, 0)]
    # Serre dual side: K - D = E_1 also has h^1 = 1
    K = canonical_divisor(T.constellation).coeffs
    assert K == (1, 2)
    dual = cech_dims(T.fan, divisor_rays(T, [1, 0]))
    assert dual.dims == {1: 1} and list(dual.support) == [(0, -1)]


def test_full_divisor_where_injectivity_fails_in_dimension_three():
    T = tree_of("x, y, z^2")
    D = PointBasis(T.constellation, [0, 3]).divisor()
    assert is_full(D)
    a = divisor_rays(T, D.coeffs)
    rep = cech_dims(T.fan, a)
    assert rep.certified and rep.dims[1] == 0 and rep.dims[2] >= 1
    inj = injectivity_check(T.fan, a, fiber_rays(T), 1)
    assert inj.verdict == "fail" and (-1, -1, 1) in inj.failures


def test_report_json_and_window_cap(monkeypatch):
    T = tree_of("x^2, y^3")
    rep = cech_dims(T.fan, divisor_rays(T, [2, 3, 6]), window=2)
    data = rep.to_json()
    assert data["verification"] == "windowed" and data["field"] == "Q"
    assert data["status"] == "certified" and data["dims"] == {"1": 1}
    assert data["support"] == {"-1,-1": {"1": 1}}
    # 10 D_I needs a window wider than the cap allows
    monkeypatch.setenv("NPC_WINDOW_CAP", "4")
    a = divisor_rays(T, [20, 30, 60])
    rep = cech_dims(T.fan, a, window=2)
    assert not rep.certified and rep.window == 4
    assert rep.status == "window inconclusive"
    monkeypatch.delenv("NPC_WINDOW_CAP")
    rep = cech_dims(T.fan, a, window=2)
    assert rep.certified
    assert rep.dims[1] == colength(adjoint_howald(power(parse_ideal("x^2, y^3"), 10))) == 280
