import itertools
import json
import random

import numpy as np
import pytest

from tangentfill.curve import PlaneCurve
from tangentfill.errors import InvalidInputError
from tangentfill.gf import field_of_order
from tangentfill.homopoly import HomPoly, monomials
from tangentfill.search import BatchKernel, random_curve, search_min_tangent_filling


def test_random_curve_is_deterministic():
    F = field_of_order(17)
    assert random_curve(F, 3, 5).poly == random_curve(F, 3, 5).poly
    assert random_curve(F, 3, 5).poly != random_curve(F, 3, 6).poly
    assert random_curve(F, 2, random.Random(1)).degree == 2
    with pytest.raises(InvalidInputError):
        random_curve(F, 0, 1)


def test_random_curve_never_zero():
    F = field_of_order(2)
    rng = random.Random(0)
    for _ in range(200):
        assert not random_curve(F, 1, rng).poly.is_zero()


@pytest.mark.parametrize("q,d", [(2, 2), (3, 2), (4, 3), (5, 3), (7, 3), (64, 2)])
def test_kernel_matches_single_curve_checks(q, d):
    F = field_of_order(q)
    kernel = BatchKernel(F, d)
    rng = random.Random(q * 10 + d)
    curves = [random_curve(F, d, rng) for _ in range(40)]
    coeffs = np.array([[c.poly.coefficient(e) for e in kernel.monomials] for c in curves])
    expected = [c.is_tangent_filling()[0] for c in curves]
    assert kernel.tangent_filling(coeffs).tolist() == expected


def _brute_minimum(q, d_max):
    F = field_of_order(q)
    for d in range(1, d_max + 1):
        monos = monomials(d)
        for coeffs in itertools.product(range(q), repeat=len(monos)):
            if not any(coeffs):
                continue
            C = PlaneCurve(HomPoly(F, d, dict(zip(monos, coeffs))))
            if C.is_tangent_filling()[0]:
                return d
    return None


@pytest.mark.parametrize("q", [2, 3])
def test_exhaustive_minimum_matches_brute_force(q):
    F = field_of_order(q)
    out = search_min_tangent_filling(F, 2, mode="exhaustive")
    assert out.mode == "exhaustive"
    assert (out.degree if out.found else None) == _brute_minimum(q, 2)
    if out.found:
        poly = HomPoly.from_spec({"field": F.spec(), "terms": out.found})
        assert PlaneCurve(poly).is_tangent_filling()[0]


def test_exhaustive_over_f2():
    out = search_min_tangent_filling(field_of_order(2), 4, mode="exhaustive")
    assert out.found is not None and out.degree == 2
    assert out.per_degree[0] == {"degree": 1, "mode": "exhaustive", "candidates": 7,
                                 "found": False}
    assert out.parameter_dim == 5


def test_auto_mode_threshold():
    F = field_of_order(3)
    out = search_min_tangent_filling(F, 3, mode="auto", budget=3 ** 6)
    modes = {row["degree"]: row["mode"] for row in out.per_degree}
    assert modes[1] == "exhaustive" and modes[2] == "exhaustive"
    if 3 in modes:
        assert modes[3] == "sampled"


def test_sampled_f17_cubics_never_fill():
    out = search_min_tangent_filling(field_of_order(17), 3, mode="sampled", budget=500, seed=7)
    assert out.found is None and out.examined == 1500
    assert out.parameter_dim == 9


def test_search_is_deterministic():
    F = field_of_order(5)
    a = search_min_tangent_filling(F, 2, mode="sampled", budget=300, seed=3).to_dict()
    b = search_min_tangent_filling(F, 2, mode="sampled", budget=300, seed=3).to_dict()
    assert json.dumps(a) == json.dumps(b)


def test_search_arguments():
    F = field_of_order(5)
    with pytest.raises(InvalidInputError):
        search_min_tangent_filling(F, 2, mode="bogus")
    with pytest.raises(InvalidInputError):
        search_min_tangent_filling(F, 0)
    with pytest.raises(InvalidInputError):
        search_min_tangent_filling(F, 2, mode="sampled", budget=0)
    with pytest.raises(InvalidInputError):
        search_min_tangent_filling(field_of_order(17), 4, mode="exhaustive")
