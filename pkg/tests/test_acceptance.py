"""Acceptance suite: thirteen end-to-end criteria with runtime limits.

Each criterion prints one ``PASS``/``FAIL`` line.  Run directly with
``python tests/test_acceptance.py`` for the summary table alone.
"""

import random
import sys
import time
from math import isqrt

import pytest

from tangentfill.curve import bitangent_bound, blokhuis_threshold, hasse_weil_cap
from tangentfill.errors import DomainError
from tangentfill.gallery import (agt_curve, find_tangent_witness, hermitian_curve,
                                 hermitian_dual_image, hermitian_line_profile, smooth_conic,
                                 strange_example)
from tangentfill.gf import field_of_order, make_field
from tangentfill.homopoly import IRREDUCIBLE, irreducibility_criterion, local_expansion
from tangentfill.search import random_curve

VERTICES = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]

# every curve built by a criterion is registered here for the duality check
_CURVES = {}


def _keep(label, curve):
    _CURVES.setdefault(label, curve)
    return curve


def _agt(q):
    return _keep(f"agt-{q}", agt_curve(field_of_order(q)))


def _full_witness_check(q):
    F = field_of_order(q)
    C = _agt(q)
    tf, _ = C.is_tangent_filling()
    pl = C.plane
    tangent = C.tangent_index
    for P in pl.points():
        w = find_tangent_witness(F, P)
        i = pl.index(w.witness)
        if not C.smooth_mask[i] or not pl.incident(P, pl.point(int(tangent[i]))):
            return False
    return tf


def c01():
    t0 = time.perf_counter()
    ok = all(_full_witness_check(q) for q in (11, 13, 23, 25, 49))
    small = time.perf_counter() - t0
    t1 = time.perf_counter()
    ok &= _full_witness_check(121)
    large = time.perf_counter() - t1
    return ok and small < 5 and large < 60, f"q<=49 {small:.2f}s, q=121 {large:.2f}s"


def c02():
    results = {q: _agt(q).is_tangent_filling() for q in (5, 7)}
    ok = not results[5][0] and not results[7][0] and (1, 1, 1) in results[7][1]
    return ok, f"uncovered q=5: {len(results[5][1])}, q=7: {len(results[7][1])}"


def c03():
    comps = _agt(8).linear_components()
    ok = all(L in comps for L in [(1, 1, 0), (0, 1, 1), (1, 0, 1)])
    for q in (9, 27):
        F = field_of_order(q)
        C = _agt(q)
        ok &= not C.singular_points(1) and not C.singular_points(2)
        _, uncovered = C.is_tangent_filling()
        ok &= all(v in uncovered for v in VERTICES)
        pl = C.plane
        for P in C.classify_points()[0]:
            expected = pl.normalize(tuple(F.pow(c, q - 2) for c in P))
            ok &= pl.point(int(C.tangent_index[pl.index(P)])) == expected
    return ok, "q=8 lines, q=9,27 smooth and not filling"


def c04():
    ok = True
    for q in (11, 13, 25, 49):
        ok &= _agt(q).count() == q * q - 3 * q + 3
    counts = []
    for q in (9, 25, 49):
        n = _keep(f"hermitian-{q}", hermitian_curve(field_of_order(q))).count()
        counts.append(n)
    return ok and counts == [28, 126, 344], f"hermitian {counts}"


def c05():
    ok = True
    for q in (11, 13):
        C = _agt(q)
        ok &= C.singular_points(1) == [(1, 1, 1)] and C.singular_points(2) == [(1, 1, 1)]
    return ok, "singular locus {[1:1:1]} at depths 1 and 2"


def c06():
    ok = True
    for q in (11, 13):
        F = field_of_order(q)
        C = _agt(q)
        e = local_expansion(C.poly, (1, 1, 1))
        ok &= e.first_nonzero_degree == 2
        ok &= e.normalized_quadratic == (1, F.neg(1), 1)
        ok &= e.normalized_discriminant == F.neg(3) != 0
        ok &= irreducibility_criterion(C.poly, C.singular_points(2)) == IRREDUCIBLE
    return ok, "A2 ~ u^2 - uv + v^2, discriminant -3"


def c07():
    ok = True
    for q in (9, 25):
        C = _keep(f"hermitian-{q}", hermitian_curve(field_of_order(q)))
        r = isqrt(q)
        ok &= C.is_blocking()[0] and C.is_tangent_filling()[0]
        ok &= set(hermitian_line_profile(C)) <= {1, r + 1}
        ok &= C.maximal_candidate()
        ok &= C.tangent_lines() == hermitian_dual_image(C)
    return ok, "q=9,25"


def c08():
    ok = True
    allowed = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)]
    for q in (5, 7, 11, 13, 23, 25, 49, 121):
        blocking, line = _agt(q).is_blocking()
        ok &= not blocking and line in allowed
    return ok, "missed line among x, y, z, x+y+z"


def _populate():
    """Register every curve the other criteria build, whatever the run order."""
    for q in (5, 7, 8, 9, 11, 13, 23, 25, 27, 49, 121):
        _agt(q)
    for q in (9, 25, 49):
        _keep(f"hermitian-{q}", hermitian_curve(field_of_order(q)))
    for q in (2, 4, 5, 7, 8):
        _keep(f"conic-{q}", smooth_conic(field_of_order(q)))
    _keep("strange-5", strange_example(make_field(5)))
    _cubics()


def c09():
    _populate()
    bad = [label for label, C in _CURVES.items()
           if C.is_tangent_filling()[0] != C.dual_set_blocking()[0]]
    return not bad, f"{len(_CURVES)} curves"


def c10():
    ok = True
    sizes = []
    for q in (11, 13):
        C = _agt(q)
        blocking, _ = C.dual_set_blocking()
        size = int(C.tangent_set.size)
        ok &= blocking and not C.dual_full_lines() and size >= blokhuis_threshold(q)
        sizes.append(size)
    return ok, f"dual sizes {sizes} vs 18, 21"


def _cubics():
    F = make_field(17)
    rng = random.Random(20240117)
    return [_keep(f"cubic-{i}", random_curve(F, 3, rng)) for i in range(500)]


def c11():
    t0 = time.perf_counter()
    hits = sum(C.is_tangent_filling()[0] for C in _cubics())
    dt = time.perf_counter() - t0
    d = 3
    ok = hits == 0 and 17 >= 4 * (d - 1) ** 2 * (d - 2) ** 2 and dt < 60
    return ok, f"{hits} hits in {dt:.2f}s"


def c12():
    S = _keep("strange-5", strange_example(make_field(5)))
    ok = S.concurrent_tangents_point() == (0, 0, 1)
    for q in (2, 4, 8):
        ok &= _keep(f"conic-{q}", smooth_conic(field_of_order(q))).is_tangent_filling()[0]
    for q in (5, 7):
        ok &= not _keep(f"conic-{q}", smooth_conic(field_of_order(q))).is_tangent_filling()[0]
    return ok, "strange [0:0:1]; conic char 2 only"


def c13():
    curves = [_agt(q) for q in (5, 7, 11, 13, 23, 25)]
    curves += [_keep(f"hermitian-{q}", hermitian_curve(field_of_order(q))) for q in (9, 25)]
    curves += [_keep(f"conic-{q}", smooth_conic(field_of_order(q))) for q in (2, 4, 5, 7, 8)]
    curves += [_keep("strange-5", strange_example(make_field(5)))]
    ok = True
    checked = 0
    for C in curves:
        ok &= C.count() <= hasse_weil_cap(C.degree, C.q)
        if C.field.p > C.degree:
            ok &= len(C.fq_bitangents()) <= bitangent_bound(C.degree)
            checked += 1
    return ok, f"{len(curves)} curves, {checked} bitangent checks"


CRITERIA = [
    (1, "AGT tangent-filling with witnesses", c01, 65),
    (2, "sharpness at q = 5, 7", c02, 1),
    (3, "characteristic 2 and 3 exceptions", c03, 10),
    (4, "point counts", c04, 5),
    (5, "singular locus over F_q and F_q^2", c05, 30),
    (6, "local quadratic form and criterion", c06, 1),
    (7, "Hermitian suite", c07, 10),
    (8, "AGT not blocking", c08, 1),
    (9, "duality equivalence", c09, 60),
    (10, "dual tangent set size bound", c10, 5),
    (11, "negative sampling of cubics", c11, 60),
    (12, "strange curve and conics", c12, 1),
    (13, "one-sided bounds", c13, 10),
]


def _line(num, name, ok, note, dt):
    return f"{'PASS' if ok else 'FAIL'} criterion {num:2d}: {name} ({note}; {dt:.2f}s)"


def _run(num, name, fn, limit):
    t0 = time.perf_counter()
    ok, note = fn()
    dt = time.perf_counter() - t0
    return ok and dt < limit, note, dt


@pytest.mark.parametrize("num,name,fn,limit", CRITERIA, ids=[f"c{n:02d}" for n, *_ in CRITERIA])
def test_criterion(num, name, fn, limit, capsys):
    ok, note, dt = _run(num, name, fn, limit)
    with capsys.disabled():
        print("\n" + _line(num, name, ok, note, dt))
    assert ok, note


def test_witness_refuses_below_threshold():
    with pytest.raises(DomainError):
        find_tangent_witness(field_of_order(7), (1, 1, 1))


if __name__ == "__main__":
    failed = 0
    for num, name, fn, limit in CRITERIA:
        ok, note, dt = _run(num, name, fn, limit)
        failed += not ok
        print(_line(num, name, ok, note, dt))
    sys.exit(1 if failed else 0)
