import json
from math import comb, factorial

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import eval_terms, naive, partial_terms
from tangentfill.errors import InvalidInputError
from tangentfill.gf import field_of_order, quadratic_extension
from tangentfill.homopoly import (INCONCLUSIVE, IRREDUCIBLE, HomPoly, binom_mod, evaluate_all,
                                  expand_linear_power, irreducibility_criterion,
                                  linear_components, local_expansion, make_poly, monomials,
                                  restrict_to_line)
from tangentfill.proj import plane


def random_poly(F, d, data):
    coeffs = data.draw(st.lists(st.integers(0, F.q - 1), min_size=comb(d + 2, 2),
                                max_size=comb(d + 2, 2)))
    return HomPoly(F, d, dict(zip(monomials(d), coeffs)))


def test_monomials():
    assert monomials(0) == [(0, 0, 0)]
    assert monomials(2) == [(2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2)]
    for d in range(7):
        assert len(monomials(d)) == comb(d + 2, 2)


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11])
def test_binom_mod(p):
    for n in range(40):
        for k in range(n + 1):
            assert binom_mod(n, k, p) == comb(n, k) % p


@pytest.mark.parametrize("q,k", [(11, 10), (13, 12), (9, 8), (8, 7), (25, 24), (7, 13)])
def test_expand_linear_power_matches_repeated_multiplication(q, k):
    F = field_of_order(q)
    a, b, c = 1, 2 % q, 3 % q
    lin = make_poly(F, [(a, (1, 0, 0)), (b, (0, 1, 0)), (c, (0, 0, 1))])
    prod = HomPoly(F, 0, {(0, 0, 0): 1})
    for _ in range(k):
        prod = prod * lin
    assert expand_linear_power(F, a, b, c, k) == prod


def test_multinomial_coefficients_prime_field():
    F = field_of_order(101)
    f = expand_linear_power(F, 1, 1, 1, 6)
    for (i, j, l), c in f.terms.items():
        assert c == factorial(6) // (factorial(i) * factorial(j) * factorial(l)) % 101


def test_validation():
    F = field_of_order(5)
    with pytest.raises(InvalidInputError):
        HomPoly(F, 2, {(1, 0, 0): 1})
    with pytest.raises(InvalidInputError):
        HomPoly(F, 1, {(1, 0, 0): 7})
    f = HomPoly(F, 1, {(1, 0, 0): 0, (0, 1, 0): 2})
    assert list(f.terms) == [(0, 1, 0)]


def test_char_p_derivative():
    F = field_of_order(5)
    f = make_poly(F, [(1, (5, 0, 0)), (1, (1, 4, 0))])
    assert f.partial("x") == make_poly(F, [(1, (0, 4, 0))])
    assert f.partial("y") == make_poly(F, [(4, (1, 3, 0))])
    assert f.partial("z").is_zero()


@given(st.sampled_from([5, 7, 9, 8]), st.integers(1, 4), st.data())
@settings(max_examples=40, deadline=None)
def test_evaluation_and_partials_match_oracle(q, d, data):
    F = field_of_order(q)
    N = naive(F)
    f = random_poly(F, d, data)
    pl = plane(F)
    vals = evaluate_all(f, pl)
    for i in range(0, pl.size, max(1, pl.size // 25)):
        P = pl.point(i)
        assert vals[i] == f(P) == eval_terms(N, f.terms, P)
    for v in range(3):
        g = f.partial(v)
        ref = partial_terms(N, f.terms, v)
        assert dict(g.terms) == {e: c for e, c in ref.items() if c}


@given(st.sampled_from([5, 7, 9]), st.integers(1, 3), st.integers(1, 3), st.data())
@settings(max_examples=30, deadline=None)
def test_ring_laws(q, d1, d2, data):
    F = field_of_order(q)
    f, g = random_poly(F, d1, data), random_poly(F, d1, data)
    h = random_poly(F, d2, data)
    assert f + g == g + f
    assert (f + g) * h == f * h + g * h
    assert f - f == HomPoly(F, d1, {})
    P = (1, 2 % q, 3 % q)
    assert (f * h)(P) == F.mul(f(P), h(P))
    # Euler's identity in characteristic p: sum x_i df/dx_i == d * f
    grad = f.gradient()
    lhs = F.add(F.add(F.mul(P[0], grad[0](P)), F.mul(P[1], grad[1](P))), F.mul(P[2], grad[2](P)))
    assert lhs == F.mul(F.from_int(d1), f(P))
    assert (h * 1) == h


def test_spec_round_trip(tmp_path):
    F = field_of_order(9)
    f = make_poly(F, [(3, (2, 0, 0)), (1, (0, 1, 1))])
    spec = json.loads(json.dumps(f.to_spec()))
    assert HomPoly.from_spec(spec) == f
    G = field_of_order(7)
    g = HomPoly.from_spec({"field": {"p": 7, "n": 1}, "terms": [{"c": -1, "e": [1, 0, 0]}]})
    assert g == make_poly(G, [(6, (1, 0, 0))])
    with pytest.raises(InvalidInputError):
        HomPoly.from_spec({"field": {"p": 7}, "terms": [{"e": [1, 0, 0]}]})


def test_lift_commutes_with_evaluation():
    F = field_of_order(7)
    ext, embed = quadratic_extension(F)
    f = expand_linear_power(F, 1, 3, 5, 4) + make_poly(F, [(2, (4, 0, 0))])
    g = f.lift(ext, embed)
    for P in plane(F).points()[::3]:
        assert g(tuple(embed(c) for c in P)) == embed(f(P))


def test_restrict_to_line():
    F = field_of_order(7)
    pl = plane(F)
    f = make_poly(F, [(1, (2, 0, 0)), (1, (0, 1, 1)), (3, (1, 1, 0))])
    for L in pl.points()[::7]:
        g = restrict_to_line(f, L, pl)
        row = pl.incidence[pl.index(L)]
        b1, b2 = pl.point(int(row[0])), pl.point(int(row[1]))
        for s in range(7):
            for t in range(7):
                pt = tuple(F.add(F.mul(s, x), F.mul(t, y)) for x, y in zip(b1, b2))
                assert g.evaluate(s, t) == f.evaluate(pt)


def test_linear_components():
    F = field_of_order(5)
    xy = make_poly(F, [(1, (1, 1, 0))])
    assert set(linear_components(xy)) == {(1, 0, 0), (0, 1, 0)}
    # x^q z - x z^q vanishes on every rational point but has only the lines x=0, z=0, x=cz
    f = make_poly(F, [(1, (5, 0, 1)), (4, (1, 0, 5))])
    comps = linear_components(f)
    assert len(comps) == 6 and all(L[1] == 0 for L in comps)


def test_local_expansion_reproduces_polynomial():
    F = field_of_order(11)
    f = expand_linear_power(F, 1, 2, 3, 4) + make_poly(F, [(5, (4, 0, 0)), (1, (0, 4, 0))])
    pl = plane(F)
    on = [P for P in pl.points() if f(P) == 0][:4]
    for P in on:
        exp = local_expansion(f, P)
        lead = next(i for i, c in enumerate(P) if c)
        others = [i for i in range(3) if i != lead]
        for u in range(0, 11, 3):
            for v in range(0, 11, 4):
                pt = list(P)
                pt[others[0]] = F.add(pt[others[0]], u)
                pt[others[1]] = F.add(pt[others[1]], v)
                assert exp.evaluate(u, v) == f(tuple(pt))
        assert exp.forms[0] == {}


def test_local_expansion_off_curve():
    F = field_of_order(5)
    with pytest.raises(InvalidInputError):
        local_expansion(make_poly(F, [(1, (1, 0, 0))]), (1, 0, 0))


def test_node_versus_cusp():
    F = field_of_order(7)
    # y^2 z - x^2 (x + z): node at [0:0:1]
    node = make_poly(F, [(1, (0, 2, 1)), (6, (3, 0, 0)), (6, (2, 0, 1))])
    # y^2 z - x^3: cusp at [0:0:1]
    cusp = make_poly(F, [(1, (0, 2, 1)), (6, (3, 0, 0))])
    assert irreducibility_criterion(node, [(0, 0, 1)]) == IRREDUCIBLE
    assert irreducibility_criterion(cusp, [(0, 0, 1)]) == INCONCLUSIVE
    e = local_expansion(cusp, (0, 0, 1))
    assert e.first_nonzero_degree == 2 and e.quadratic_is_square()
    assert irreducibility_criterion(node, []) == INCONCLUSIVE
    conic = make_poly(F, [(1, (2, 0, 0)), (1, (0, 1, 1))])
    assert irreducibility_criterion(conic, [(1, 0, 0)]) == INCONCLUSIVE


def test_evaluate_all_matches_pointwise_large():
    F = field_of_order(49)
    f = expand_linear_power(F, 1, 1, 1, 48) + make_poly(F, [(1, (48, 0, 0))])
    pl = plane(F)
    vals = evaluate_all(f, pl)
    idx = np.random.default_rng(0).integers(0, pl.size, 40)
    for i in idx:
        assert vals[i] == f(pl.point(int(i)))
