"""Random ideal generators and suite files.

A suite file is a JSON list of ``{"check": name, "params": {...}}`` where
ideals are given either in the ``x^2, y^3`` syntax or as ideal JSON.
"""

from __future__ import annotations

import json
import random
from itertools import permutations

from ..monomial import (MonomialIdeal, is_finitely_supported, maximal_ideal,
                        parse_ideal, power, product, pure_powers)
from . import checks
from . import pure_powers as pp_checks


def random_m_primary(rng: random.Random, d: int, max_exp=8, extra=3) -> MonomialIdeal:
    """Pure powers plus a few random mixed monomials, all exponents <= max_exp."""
    gens = []
    for k in range(d):
        g = [0] * d
        g[k] = rng.randint(1, max_exp)
        gens.append(g)
    for _ in range(rng.randint(0, extra)):
        gens.append([rng.randint(0, max_exp) for _ in range(d)])
    return MonomialIdeal(d, gens)


def _ord_one_factors(d, max_k=3):
    out = []
    for k in range(1, max_k + 1):
        for perm in set(permutations(range(d))):
            exps = [1] * (d - 1) + [k]
            out.append(pure_powers([exps[perm[j]] for j in range(d)]))
    return sorted(set(out), key=str)


def family_d3(rng: random.Random, max_a=2, max_factors=2, d=3) -> MonomialIdeal:
    """``m^a`` times a few order-one factors such as ``(x, y, z^k)``."""
    factors = _ord_one_factors(d)
    I = power(maximal_ideal(d), rng.randint(0, max_a))
    for _ in range(rng.randint(1, max_factors)):
        I = product(I, rng.choice(factors))
    return I


def finitely_supported(rng: random.Random, draw, tries=200):
    """Rejection-sample ``draw(rng)`` until the ideal is finitely supported."""
    for _ in range(tries):
        I = draw(rng)
        if is_finitely_supported(I):
            return I
    raise RuntimeError(f"no finitely supported ideal in {tries} draws")


def d3_ideal(rng: random.Random) -> MonomialIdeal:
    """Alternate between the product family and random m-primary ideals."""
    if rng.random() < 0.6:
        return finitely_supported(rng, family_d3)
    return finitely_supported(rng, lambda r: random_m_primary(r, 3, max_exp=4, extra=3))


CHECKS = {
    "adjoint": (checks.check_adjoint_theorem, ("ideal",)),
    "transform": (checks.check_transform_commutes, ("ideal",)),
    "adj-product": (checks.check_prop_3_3, ("ideal", "ideal2")),
    "pullout": (checks.check_pullout, ("ideal",)),
    "subadditivity": (checks.check_subadditivity, ("ideal", "ideal2")),
    "product": (checks.check_product_cor, ("ideal", "ideal2")),
    "vanishing": (checks.check_vanishing, ("ideal",)),
    "duality": (checks.check_duality, ("ideal",)),
    "discrepancy": (checks.check_discrepancy, ("ideal",)),
    "pure-powers": (pp_checks.check_section4, ("J",)),
}


def run_check(name, params, seed=None):
    """Run one check from string/JSON parameters."""
    if name not in CHECKS:
        raise KeyError(f"unknown check {name!r}; choose from {sorted(CHECKS)}")
    fn, argnames = CHECKS[name]
    params = dict(params)
    args = []
    for a in argnames:
        if a not in params:
            raise KeyError(f"check {name!r} needs parameter {a!r}")
        v = params.pop(a)
        if a == "J":
            args.append(_exps(v))
        else:
            args.append(v if isinstance(v, MonomialIdeal) else parse_ideal(v if isinstance(v, str) else json.dumps(v)))
    if name == "pure-powers" and "s" in params:
        lo, hi = params.pop("s")
        params["s_range"] = range(lo, hi + 1)
    rep = fn(*args, **params)
    rep.seed = seed
    return rep


def _exps(v):
    if isinstance(v, (list, tuple)):
        return [int(x) for x in v]
    I = parse_ideal(v)
    if not pp_checks.is_pure_power_ideal(I):
        raise ValueError(f"{I} is not generated by pure powers")
    return [max(g) for g in sorted(I.gens, key=lambda g: [i for i, x in enumerate(g) if x])]


def load_suite(path):
    with open(path) as fh:
        text = fh.read()
    if not text.strip():
        raise ValueError(f"suite file {path} is empty")
    data = json.loads(text)
    if not isinstance(data, list) or not data:
        raise ValueError(f"suite file {path} must be a non-empty JSON list")
    for entry in data:
        if not isinstance(entry, dict) or "check" not in entry:
            raise ValueError(f"bad suite entry {entry!r}")
    return data


def default_suite(seed=0, n2=6, n3=3):
    """Fixed fixtures plus a few seeded random cases."""
    rng = random.Random(seed)
    suite = [
        {"check": "adjoint", "params": {"ideal": "x^2, y^3"}},
        {"check": "transform", "params": {"ideal": "x^2, y^3"}},
        {"check": "duality", "params": {"ideal": "x^2, y^3"}},
        {"check": "vanishing", "params": {"ideal": "x^2, y^3"}},
        {"check": "adjoint", "params": {"ideal": "x^3, x^2*y, x*y^2, y^3, x^2*z, x*y*z, y^2*z, x*z^2, y*z^2, z^4"}},
        {"check": "duality", "params": {"ideal": "x^3, x^2*y, x*y^2, y^3, x^2*z, x*y*z, y^2*z, x*z^2, y*z^2, z^4"}},
        {"check": "vanishing", "params": {"ideal": "x^3, x^2*y, x*y^2, y^3, x^2*z, x*y*z, y^2*z, x*z^2, y*z^2, z^4"}},
        {"check": "subadditivity", "params": {"ideal": "x^2, y^3", "ideal2": "x^2, y^3"}},
        {"check": "pullout", "params": {"ideal": "x^2, y^2, z^2"}},
        {"check": "pure-powers", "params": {"J": [2, 2, 2]}},
        {"check": "pure-powers", "params": {"J": [3, 3, 3]}},
    ]
    for _ in range(n2):
        I = random_m_primary(rng, 2)
        suite.append({"check": "adjoint", "params": {"ideal": str(I)}, "seed": seed})
    for _ in range(n3):
        I = d3_ideal(rng)
        suite.append({"check": "adjoint", "params": {"ideal": str(I)}, "seed": seed})
    return suite


def run_suite(entries):
    return [run_check(e["check"], e.get("params", {}), seed=e.get("seed")) for e in entries]
