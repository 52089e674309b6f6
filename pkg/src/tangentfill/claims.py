"""Registry of computational checks, runnable from ``tangentfill verify-paper``.

Each claim has a stable identifier, a one-line description, a default list of
field orders and an eligibility test for user-supplied orders.  A claim
returns a pass/fail verdict plus a JSON-ready detail record per order.
"""

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import isqrt

from .curve import bitangent_bound, blokhuis_threshold, hasse_weil_cap
from .errors import DomainError, InvalidInputError
from .gallery import (agt_curve, agt_membership, agt_tangent_coeffs, find_tangent_witness,
                      hermitian_curve, hermitian_dual_image, hermitian_line_profile,
                      projective_triangle, smooth_conic, strange_example)
from .gf import field_of_order
from .homopoly import IRREDUCIBLE, irreducibility_criterion, local_expansion
from .proj import plane
from .search import random_curve

VERTICES = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]


def _is_square(q):
    return isqrt(q) ** 2 == q


def _p(q):
    return field_of_order(q).p


@dataclass
class Claim:
    id: str
    description: str
    run: object
    orders: tuple = ()
    eligible: object = None


@dataclass
class ClaimResult:
    id: str
    description: str
    status: str
    details: list

    def to_dict(self) -> dict:
        return {"id": self.id, "description": self.description,
                "status": self.status, "details": self.details}


# -- individual checks ---------------------------------------------------------------

def _agt_tangent_filling(q):
    F = field_of_order(q)
    C = agt_curve(F)
    tf, uncovered = C.is_tangent_filling()
    pl = C.plane
    covered = 0
    cases = {}
    tangent = C.tangent_index
    for P in pl.points():
        w = find_tangent_witness(F, P)
        # check against the gradient-based tangent table, not the closed form
        if pl.incident(P, pl.point(int(tangent[pl.index(w.witness)]))):
            covered += 1
        cases[w.case] = cases.get(w.case, 0) + 1
    ok = tf and covered == pl.size
    return ok, {"q": q, "tangent_filling": tf, "witnessed": covered, "points": pl.size,
                "cases": dict(sorted(cases.items()))}


def _agt_not_filling(q):
    F = field_of_order(q)
    tf, uncovered = agt_curve(F).is_tangent_filling()
    return not tf, {"q": q, "tangent_filling": tf, "uncovered": len(uncovered),
                    "first_uncovered": list(uncovered[0]) if uncovered else None}


def _agt_q7(q):
    F = field_of_order(q)
    tf, uncovered = agt_curve(F).is_tangent_filling()
    try:
        find_tangent_witness(F, (1, 1, 1))
        refused = False
    except DomainError:
        refused = True
    ok = not tf and (1, 1, 1) in uncovered and refused
    return ok, {"q": q, "center_uncovered": (1, 1, 1) in uncovered, "witness_refused": refused}


def _char_exceptions(q):
    F = field_of_order(q)
    C = agt_curve(F)
    if F.p == 2:
        comps = C.linear_components()
        need = [(1, 1, 0), (0, 1, 1), (1, 0, 1)]
        ok = all(L in comps for L in need)
        return ok, {"q": q, "linear_components": [list(L) for L in comps]}
    sing1 = C.singular_points(1)
    sing2 = C.singular_points(2)
    _, uncovered = C.is_tangent_filling()
    vertices_uncovered = all(v in uncovered for v in VERTICES)
    pl = C.plane
    formula_ok = True
    tangent = C.tangent_index
    for P in C.classify_points()[0]:
        expected = pl.normalize(tuple(F.pow(c, q - 2) for c in P))
        if pl.point(int(tangent[pl.index(P)])) != expected:
            formula_ok = False
            break
    ok = not sing1 and not sing2 and vertices_uncovered and formula_ok
    return ok, {"q": q, "singular": len(sing1), "singular_ext2": len(sing2),
                "vertices_uncovered": vertices_uncovered, "tangent_formula": formula_ok}


def _agt_count(q):
    n = agt_curve(field_of_order(q)).count()
    expected = q * q - 3 * q + 3
    return n == expected, {"curve": "agt", "q": q, "points": n, "expected": expected}


def _hermitian_count(q):
    n = hermitian_curve(field_of_order(q)).count()
    r = isqrt(q)
    return n == r ** 3 + 1, {"curve": "hermitian", "q": q, "points": n, "expected": r ** 3 + 1}


def _point_counts(q):
    results = []
    if _p(q) > 3:
        results.append(_agt_count(q))
    if _is_square(q):
        results.append(_hermitian_count(q))
    return all(ok for ok, _ in results), [d for _, d in results]


def _agt_singular(q):
    C = agt_curve(field_of_order(q))
    s1 = C.singular_points(1)
    s2 = C.singular_points(2)
    ok = s1 == [(1, 1, 1)] and s2 == [(1, 1, 1)]
    return ok, {"q": q, "singular": [list(P) for P in s1], "singular_ext2": [list(P) for P in s2]}


def _agt_local(q):
    F = field_of_order(q)
    C = agt_curve(F)
    exp = local_expansion(C.poly, (1, 1, 1))
    norm = exp.normalized_quadratic
    target = (1, F.neg(1), 1)
    disc = exp.normalized_discriminant
    verdict = irreducibility_criterion(C.poly, C.singular_points(2))
    ok = (exp.first_nonzero_degree == 2 and norm == target
          and disc == F.neg(3) and disc != 0 and verdict == IRREDUCIBLE)
    return ok, {"q": q, "multiplicity": exp.first_nonzero_degree,
                "normalized_quadratic": list(norm), "discriminant": disc,
                "criterion": verdict}


def _agt_membership(q):
    F = field_of_order(q)
    C = agt_curve(F)
    pl = C.plane
    agree = all(agt_membership(F, P) == bool(C.on_curve[i]) for i, P in enumerate(pl.points()))
    smooth = C.classify_points()[0]
    tangent = C.tangent_index
    tangents = all(agt_tangent_coeffs(F, Q) == pl.point(int(tangent[pl.index(Q)]))
                   for Q in smooth)
    return agree and tangents, {"q": q, "membership_agrees": agree, "tangent_formula": tangents}


def _agt_not_blocking(q):
    C = agt_curve(field_of_order(q))
    blocking, line = C.is_blocking()
    ok = not blocking and line in [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)]
    return ok, {"q": q, "blocking": blocking, "missed_line": list(line) if line else None}


def _hermitian(q):
    F = field_of_order(q)
    C = hermitian_curve(F)
    r = isqrt(q)
    blocking, _ = C.is_blocking()
    tf, _ = C.is_tangent_filling()
    profile = hermitian_line_profile(C)
    dual = C.tangent_lines() == hermitian_dual_image(C)
    ok = (blocking and tf and set(profile) <= {1, r + 1}
          and profile.get(1, 0) == C.count() and C.maximal_candidate() and dual)
    return ok, {"q": q, "blocking": blocking, "tangent_filling": tf,
                "line_profile": {str(k): v for k, v in profile.items()},
                "maximal_candidate": C.maximal_candidate(), "self_dual": dual}


def _blokhuis(q):
    C = agt_curve(field_of_order(q))
    blocking, _ = C.dual_set_blocking()
    full = C.dual_full_lines()
    size = int(C.tangent_set.size)
    threshold = blokhuis_threshold(q)
    ok = blocking and not full and size >= threshold
    return ok, {"q": q, "dual_set_size": size, "threshold": float(threshold),
                "dual_blocking": blocking, "full_dual_lines": len(full)}


def _negative_sampling(q, samples=500, seed=17, d=3):
    F = field_of_order(q)
    rng = random.Random(seed)
    hits = 0
    for _ in range(samples):
        if random_curve(F, d, rng).is_tangent_filling()[0]:
            hits += 1
    p = F.p
    bound = 4 * (d - 1) ** 2 * (d - 2) ** 2
    return hits == 0 and p >= bound, {"q": q, "degree": d, "samples": samples, "seed": seed,
                                      "tangent_filling": hits, "characteristic_bound": bound}


def _strange(q):
    F = field_of_order(q)
    C = strange_example(F)
    point = C.concurrent_tangents_point()
    return point == (0, 0, 1), {"q": q, "concurrent_point": list(point) if point else None}


def _conic(q):
    F = field_of_order(q)
    tf, _ = smooth_conic(F).is_tangent_filling()
    expected = F.p == 2
    return tf == expected, {"q": q, "tangent_filling": tf, "expected": expected}


def _documented_curves(q):
    """Gallery curves known to be geometrically irreducible over F_q."""
    F = field_of_order(q)
    out = [("conic", smooth_conic(F))]
    if F.p > 3 and q >= 5:
        out.append(("agt", agt_curve(F)))
    if _is_square(q):
        out.append(("hermitian", hermitian_curve(F)))
    if F.n == 1:
        out.append(("strange", strange_example(F)))
    return out


def _hasse_weil(q):
    details, ok = [], True
    for name, C in _documented_curves(q):
        cap = hasse_weil_cap(C.degree, q)
        n = C.count()
        ok &= n <= cap
        details.append({"curve": name, "q": q, "points": n, "cap": cap})
    return ok, details


def _bitangents(q):
    details, ok = [], True
    for name, C in _documented_curves(q):
        if C.field.p <= C.degree:
            continue
        n = len(C.fq_bitangents())
        bound = bitangent_bound(C.degree)
        ok &= n <= bound
        details.append({"curve": name, "q": q, "bitangents": n, "bound": bound})
    return ok, details


def _triangle(q):
    F = field_of_order(q)
    pts = projective_triangle(F)
    blocking, _ = plane(F).is_blocking_set(pts)
    size_ok = 2 * len(pts) == 3 * (q + 1)
    return blocking and size_ok, {"q": q, "size": len(pts), "blocking": blocking}


def _duality_curves(q):
    F = field_of_order(q)
    curves = [("conic", smooth_conic(F)), ("strange", strange_example(F))]
    if q >= 3:
        curves.append(("agt", agt_curve(F)))
    if _is_square(q):
        curves.append(("hermitian", hermitian_curve(F)))
    rng = random.Random(q)
    for d in (2, 3):
        curves.append((f"random-{d}", random_curve(F, d, rng)))
    return curves


def _duality(q):
    details, ok = [], True
    for name, C in _duality_curves(q):
        tf, _ = C.is_tangent_filling()
        dual, _ = C.dual_set_blocking()
        ok &= tf == dual
        details.append({"curve": name, "q": q, "tangent_filling": tf, "dual_blocking": dual})
    return ok, details


def _large_char(q):
    return _p(q) > 3


CLAIMS = [
    Claim("thm1.4", "AGT curve is tangent-filling; every point gets an explicit witness",
          _agt_tangent_filling, (11, 13, 23, 25, 49, 121), lambda q: _p(q) > 3 and q >= 11),
    Claim("lemma3.1", "AGT points are exactly xyz(x+y+z) != 0; closed-form tangent lines",
          _agt_membership, (11, 13, 23, 25, 49), _large_char),
    Claim("prop3.2", "AGT has the single singular point [1:1:1] over F_q and F_q^2",
          _agt_singular, (11, 13), lambda q: _p(q) > 3),
    Claim("prop3.5", "AGT at [1:1:1]: node with quadratic part u^2 - uv + v^2, criterion holds",
          _agt_local, (11, 13), _large_char),
    Claim("cor3.3", "AGT is not blocking; a coordinate line or x+y+z misses it",
          _agt_not_blocking, (5, 7, 11, 13, 23, 25, 49), _large_char),
    Claim("rem1.2", "AGT in characteristic 2 and 3: line components or smooth and not filling",
          _char_exceptions, (8, 9, 27), lambda q: _p(q) in (2, 3) and q >= 4),
    Claim("rem1.6", "AGT over F_5 and F_7 is not tangent-filling",
          _agt_not_filling, (5, 7), lambda q: _large_char(q) and q < 11),
    Claim("rem3.7", "AGT over F_7 leaves [1:1:1] uncovered and the witness search refuses",
          _agt_q7, (7,), lambda q: q == 7),
    Claim("point-counts", "#AGT = q^2 - 3q + 3 and #Hermitian = q^(3/2) + 1",
          _point_counts, (9, 11, 13, 25, 49), lambda q: _large_char(q) or _is_square(q)),
    Claim("hermitian", "Hermitian curve: blocking, tangent-filling, maximal, self-dual tangents",
          _hermitian, (9, 25), _is_square),
    Claim("strange", "All tangents of x y^(p-1) - z^p pass through [0:0:1]",
          _strange, (5,), lambda q: field_of_order(q).n == 1),
    Claim("conic-char2", "Smooth conic is tangent-filling exactly in characteristic 2",
          _conic, (2, 4, 8, 5, 7), lambda q: True),
    Claim("blokhuis", "AGT dual tangent set is a nontrivial blocking set of size >= 3(q+1)/2",
          _blokhuis, (11, 13), lambda q: field_of_order(q).n == 1 and q >= 11),
    Claim("hasse-weil", "Point counts of irreducible gallery curves respect the Hasse-Weil cap",
          _hasse_weil, (5, 7, 9, 11, 13, 25), lambda q: True),
    Claim("bitangent-bound", "Rational bitangents number at most d^2 (d-1)^2 / 2 when p > d",
          _bitangents, (5, 7, 11, 13), lambda q: True),
    Claim("triangle", "Projective triangle has 3(q+1)/2 points and blocks every line",
          _triangle, (5, 7, 11), lambda q: q % 2 == 1),
    Claim("negative-sampling", "500 seeded random cubics over F_17 are never tangent-filling",
          _negative_sampling, (17,), lambda q: _p(q) >= 16),
    Claim("duality", "Tangent-filling agrees with blocking of the dual tangent set",
          _duality, (2, 3, 4, 5, 7, 8, 9, 11, 13, 25), lambda q: True),
]

ALIASES = {"remark1.6": "rem1.6", "remark1.2": "rem1.2", "remark3.7": "rem3.7",
           "theorem1.4": "thm1.4", "lemma3.4": "prop3.5"}

REGISTRY = {c.id: c for c in CLAIMS}


def resolve(ids) -> list:
    """Claims for the given identifiers (aliases allowed), registry order kept."""
    if not ids:
        return list(CLAIMS)
    wanted = set()
    for raw in ids:
        key = ALIASES.get(raw.strip().lower(), raw.strip().lower())
        if key not in REGISTRY:
            raise InvalidInputError(f"unknown claim {raw!r}; known: {', '.join(REGISTRY)}")
        wanted.add(key)
    return [c for c in CLAIMS if c.id in wanted]


def run_claim(claim: Claim, orders=None) -> ClaimResult:
    if orders:
        qs = [q for q in orders if claim.eligible(q)]
    else:
        qs = list(claim.orders)
    if not qs:
        return ClaimResult(claim.id, claim.description, "SKIP", [])
    passed, details = True, []
    for q in qs:
        ok, detail = claim.run(q)
        passed &= bool(ok)
        details.extend(detail if isinstance(detail, list) else [detail])
    return ClaimResult(claim.id, claim.description, "PASS" if passed else "FAIL", details)


def run_claims(ids=None, orders=None, threads: int = 1) -> list:
    """Run claims, optionally on a thread pool; results keep registry order."""
    claims = resolve(ids)
    for q in orders or ():
        field_of_order(q)
    if threads > 1 and len(claims) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(lambda c: run_claim(c, orders), claims))
    return [run_claim(c, orders) for c in claims]
