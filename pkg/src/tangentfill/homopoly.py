"""Homogeneous polynomials in ``x, y, z`` over a finite field.

A :class:`HomPoly` is an immutable sparse map from exponent triples to nonzero
coefficient indices.  Besides the algebra (sums, products, formal partial
derivatives, multinomial powers of linear forms) the module provides the
evaluation kernels used by the curve scans, restriction of a polynomial to a
line, detection of rational line components and local expansions at points.
"""

from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import InvalidInputError
from .gf import Field, FieldElement, field_from_spec
from .proj import ProjectivePlane, plane as plane_of

VARS = "xyz"


def monomials(d: int) -> list[tuple[int, int, int]]:
    """All exponent triples of total degree ``d``, descending lexicographic."""
    return [(a, b, d - a - b) for a in range(d, -1, -1) for b in range(d - a, -1, -1)]


@lru_cache(maxsize=None)
def _factorials_mod(p: int):
    fact = [1] * p
    for i in range(1, p):
        fact[i] = fact[i - 1] * i % p
    return fact


def binom_mod(n: int, k: int, p: int) -> int:
    """Binomial coefficient mod a prime via Lucas' theorem."""
    if k < 0 or k > n:
        return 0
    fact = _factorials_mod(p) if p < (1 << 16) else None
    result = 1
    while n or k:
        ni, ki = n % p, k % p
        if ki > ni:
            return 0
        if fact is not None:
            num = fact[ni]
            den = fact[ki] * fact[ni - ki] % p
        else:
            num, den = 1, 1
            for j in range(ki):
                num = num * (ni - j) % p
                den = den * (j + 1) % p
        result = result * num * pow(den, p - 2, p) % p
        n //= p
        k //= p
    return result


class HomPoly:
    """Homogeneous polynomial of a fixed degree over ``field``.

    ``terms`` maps exponent triples ``(a, b, c)`` with ``a + b + c == degree``
    to nonzero coefficient indices.  The zero polynomial keeps its degree tag.
    """

    __slots__ = ("field", "degree", "terms")

    def __init__(self, field: Field, degree: int, terms: dict):
        if degree < 0:
            raise InvalidInputError("negative degree")
        clean = {}
        for e, c in terms.items():
            e = tuple(int(v) for v in e)
            if len(e) != 3 or min(e) < 0 or sum(e) != degree:
                raise InvalidInputError(f"exponent {e} does not have total degree {degree}")
            c = int(c)
            if not 0 <= c < field.q:
                raise InvalidInputError(f"coefficient {c} outside {field!r}")
            if c:
                clean[e] = c
        self.field = field
        self.degree = degree
        self.terms = dict(sorted(clean.items(), reverse=True))

    # -- basics -------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, e) -> int:
        return self.terms.get(tuple(e), 0)

    def __eq__(self, other):
        if not isinstance(other, HomPoly):
            return NotImplemented
        return (self.field, self.degree, self.terms) == (other.field, other.degree, other.terms)

    def __hash__(self):
        return hash((self.field, self.degree, tuple(self.terms.items())))

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        return f"HomPoly({self}, degree={self.degree}, over {self.field!r})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms.items():
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(VARS, e) if k
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts)

    # -- algebra ------------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, HomPoly) or other.field != self.field:
            raise InvalidInputError("polynomials over different fields")

    def __add__(self, other):
        self._check(other)
        if other.degree != self.degree and not (self.is_zero() or other.is_zero()):
            raise InvalidInputError("sum of polynomials of different degrees is not homogeneous")
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        F = self.field
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = F.add(terms.get(e, 0), c)
        return HomPoly(F, self.degree, terms)

    def __neg__(self):
        F = self.field
        return HomPoly(F, self.degree, {e: F.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)):
            return self.scale(other)
        self._check(other)
        F = self.field
        terms = defaultdict(int)
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                terms[e] = F.add(terms[e], F.mul(c1, c2))
        return HomPoly(F, self.degree + other.degree, terms)

    def scale(self, c):
        F = self.field
        c = _coef(F, c)
        return HomPoly(F, self.degree, {e: F.mul(k, c) for e, k in self.terms.items()})

    def partial(self, var) -> "HomPoly":
        """Formal partial derivative; exponents are reduced mod p."""
        i = VARS.index(var) if isinstance(var, str) else int(var)
        F = self.field
        terms = {}
        for e, c in self.terms.items():
            k = e[i] % F.p
            if k:
                ne = list(e)
                ne[i] -= 1
                terms[tuple(ne)] = F.mul(c, F.from_int(k))
        return HomPoly(F, max(self.degree - 1, 0), terms)

    def gradient(self) -> tuple["HomPoly", "HomPoly", "HomPoly"]:
        return self.partial(0), self.partial(1), self.partial(2)

    def lift(self, field: Field, embed) -> "HomPoly":
        """The same polynomial with coefficients pushed into ``field``."""
        return HomPoly(field, self.degree, {e: embed(c) for e, c in self.terms.items()})

    # -- evaluation ---------------------------------------------------------

    def evaluate(self, point) -> int:
        """Value at a coordinate triple (field indices)."""
        F = self.field
        coords = [int(v) for v in point]
        cache = [{}, {}, {}]

        def power(i, k):
            got = cache[i].get(k)
            if got is None:
                got = cache[i][k] = F.pow(coords[i], k)
            return got

        acc = 0
        for (a, b, c), k in self.terms.items():
            v = F.mul(k, power(0, a))
            if v:
                v = F.mul(v, power(1, b))
            if v:
                v = F.mul(v, power(2, c))
            acc = F.add(acc, v)
        return acc

    def __call__(self, point) -> int:
        return self.evaluate(point)

    # -- serialisation -------------------------------------------------------

    def to_spec(self) -> dict:
        return {
            "field": self.field.spec(),
            "degree": self.degree,
            "terms": [{"c": c, "e": list(e)} for e, c in self.terms.items()],
        }

    @classmethod
    def from_spec(cls, spec: dict) -> "HomPoly":
        """Parse ``{"field": {...}, "terms": [{"c": int, "e": [a, b, c]}, ...]}``."""
        try:
            field = field_from_spec(spec["field"])
            raw = [(t["c"], tuple(t["e"])) for t in spec["terms"]]
        except (KeyError, TypeError) as exc:
            raise InvalidInputError(f"malformed curve spec: {exc}") from exc
        if not raw and "degree" not in spec:
            raise InvalidInputError("curve spec has no terms")
        if field.n == 1:
            raw = [(int(c) % field.p, e) for c, e in raw]
        return make_poly(field, raw, degree=spec.get("degree"))


def _coef(F: Field, c) -> int:
    if isinstance(c, FieldElement):
        F.check(c)
        return c.index
    c = int(c)
    if F.n == 1:
        return c % F.p
    if not 0 <= c < F.q:
        raise InvalidInputError(f"coefficient {c} outside {F!r}")
    return c


def make_poly(field: Field, terms, degree=None) -> HomPoly:
    """Build a polynomial from ``(coefficient, exponent triple)`` pairs.

    Like terms are combined and zeros dropped.  Integer coefficients are read
    mod p over prime fields and as element indices otherwise.
    """
    terms = list(terms)
    degrees = {sum(e) for _, e in terms}
    if len(degrees) > 1:
        raise InvalidInputError(f"mixed total degrees {sorted(degrees)}")
    if degree is None:
        if not degrees:
            raise InvalidInputError("empty term list needs an explicit degree")
        degree = degrees.pop()
    elif degrees and degrees != {degree}:
        raise InvalidInputError("terms do not match the declared degree")
    acc = defaultdict(int)
    for c, e in terms:
        e = tuple(int(v) for v in e)
        acc[e] = field.add(acc[e], _coef(field, c))
    return HomPoly(field, int(degree), acc)


def expand_linear_power(field: Field, a, b, c, k: int) -> HomPoly:
    """``(a*x + b*y + c*z)**k`` with multinomial coefficients reduced mod p."""
    F = field
    a, b, c = (_coef(F, v) for v in (a, b, c))
    if (a, b, c) == (0, 0, 0):
        raise InvalidInputError("zero linear form")
    p = F.p
    terms = {}
    for i in range(k, -1, -1):
        bi = binom_mod(k, i, p)
        if not bi:
            continue
        ai = F.pow(a, i)
        for j in range(k - i, -1, -1):
            m = bi * binom_mod(k - i, j, p) % p
            if not m:
                continue
            v = F.mul(F.from_int(m), F.mul(ai, F.mul(F.pow(b, j), F.pow(c, k - i - j))))
            if v:
                terms[(i, j, k - i - j)] = v
    return HomPoly(F, k, terms)


# -- vectorised evaluation ----------------------------------------------------

def evaluate_at(f: HomPoly, xs, ys, zs) -> np.ndarray:
    """Values of ``f`` at coordinate arrays (broadcast together)."""
    F = f.field
    xs, ys, zs = np.broadcast_arrays(*(np.asarray(v, dtype=np.int64) for v in (xs, ys, zs)))
    if f.is_zero():
        return np.zeros(xs.shape, dtype=np.int64)
    caches = [{}, {}, {}]
    coords = (xs, ys, zs)

    def power(i, k):
        got = caches[i].get(k)
        if got is None:
            got = caches[i][k] = F.vpow(coords[i], k)
        return got

    parts = (
        F.vmul(F.vmul(F.vmul(k, power(0, a)), power(1, b)), power(2, c))
        for (a, b, c), k in f.terms.items()
    )
    return F.vsum(parts)


def evaluate_all(f: HomPoly, pl: ProjectivePlane = None) -> np.ndarray:
    """Values of ``f`` at every point of the plane, in canonical order.

    The affine chart ``[1:y:z]`` is a ``q x q`` grid, so the polynomial is
    summed in two stages: first over the ``y`` exponent for each ``z``
    exponent, then over ``z`` on the grid.  This costs ``O(len(f) q + d q^2)``
    field operations instead of ``O(len(f) q^2)``.
    """
    F = f.field
    pl = pl or plane_of(F)
    q = F.q
    out = np.zeros(pl.size, dtype=np.int64)
    if f.is_zero():
        return out
    elems = np.arange(q, dtype=np.int64)
    powers = {}

    def power(k):
        got = powers.get(k)
        if got is None:
            got = powers[k] = F.vpow(elems, k)
        return got

    by_z = defaultdict(list)
    for (a, b, c), k in f.terms.items():
        by_z[c].append((b, k))
    inner = {c: F.vsum(F.vmul(k, power(b)) for b, k in lst) for c, lst in by_z.items()}

    rows = max(1, (1 << 20) // q)
    for y0 in range(0, q, rows):
        y1 = min(q, y0 + rows)
        block = F.vsum(F.vmul(g[y0:y1, None], power(c)[None, :]) for c, g in inner.items())
        out[y0 * q : y1 * q] = block.ravel()

    line_terms = [(c, k) for (a, b, c), k in f.terms.items() if a == 0]
    if line_terms:
        out[q * q : q * q + q] = F.vsum(F.vmul(k, power(c)) for c, k in line_terms)
    out[-1] = f.coefficient((0, 0, f.degree))
    return out


# -- restriction to lines -------------------------------------------------------

@dataclass(frozen=True)
class BinaryForm:
    """``sum_i coeffs[i] * s^(degree-i) * t^i`` over ``field``."""

    field: Field
    degree: int
    coeffs: tuple

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def evaluate(self, s: int, t: int) -> int:
        F = self.field
        acc = 0
        for i, c in enumerate(self.coeffs):
            if c:
                acc = F.add(acc, F.mul(c, F.mul(F.pow(s, self.degree - i), F.pow(t, i))))
        return acc


def _linear_powers(F: Field, u: int, v: int, top: int):
    """Coefficient lists of ``(u*s + v*t)**k`` for ``k = 0..top``."""
    out = [[1]]
    for _ in range(top):
        prev = out[-1]
        nxt = [0] * (len(prev) + 1)
        for i, c in enumerate(prev):
            if c:
                nxt[i] = F.add(nxt[i], F.mul(c, u))
                nxt[i + 1] = F.add(nxt[i + 1], F.mul(c, v))
        out.append(nxt)
    return out


def _convolve(F: Field, a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = F.add(out[i + j], F.mul(x, y))
    return out


def line_basis(pl: ProjectivePlane, line):
    """The first two canonical points of ``line``."""
    row = pl.incidence[pl.index(pl.normalize(line))]
    return pl.point(int(row[0])), pl.point(int(row[1]))


def restrict_to_line(f: HomPoly, line, pl: ProjectivePlane = None) -> BinaryForm:
    """``g(s, t) = f(s*B1 + t*B2)`` where ``B1, B2`` are the first two points of the line."""
    if f.is_zero():
        raise InvalidInputError("cannot restrict the zero polynomial")
    F = f.field
    pl = pl or plane_of(F)
    b1, b2 = line_basis(pl, line)
    tops = [max(e[i] for e in f.terms) for i in range(3)]
    pw = [_linear_powers(F, b1[i], b2[i], tops[i]) for i in range(3)]
    acc = [0] * (f.degree + 1)
    for (a, b, c), k in f.terms.items():
        prod = _convolve(F, _convolve(F, pw[0][a], pw[1][b]), pw[2][c])
        for i, v in enumerate(prod):
            if v:
                acc[i] = F.add(acc[i], F.mul(k, v))
    return BinaryForm(F, f.degree, tuple(acc))


def linear_components(f: HomPoly, pl: ProjectivePlane = None, values=None) -> list:
    """All F_q-rational lines along which ``f`` vanishes identically.

    A line qualifies only if ``f`` vanishes at its ``q+1`` rational points.
    When ``deg f <= q`` that is already sufficient (a nonzero binary form of
    degree d has at most d zeros on P^1); otherwise the restriction is
    expanded explicitly.
    """
    if f.is_zero():
        raise InvalidInputError("the zero polynomial has no components")
    pl = pl or plane_of(f.field)
    if values is None:
        values = evaluate_all(f, pl)
    candidates = [pl.point(int(i)) for i in pl.full_lines(values == 0)]
    if f.degree <= pl.q:
        return candidates
    return [L for L in candidates if restrict_to_line(f, L, pl).is_zero()]


# -- local expansion ------------------------------------------------------------

@dataclass(frozen=True)
class LocalExpansion:
    """Homogeneous pieces of ``f`` around a point in an affine chart.

    ``chart`` is the coordinate set to 1; ``u`` and ``v`` are the other two
    coordinates (in order) shifted so the center becomes the origin.
    ``forms[k]`` maps ``(i, j)`` with ``i + j == k`` to the coefficient of
    ``u^i v^j``.
    """

    field: Field
    center: tuple
    chart: int
    forms: tuple

    @property
    def first_nonzero_degree(self):
        for k, form in enumerate(self.forms):
            if form:
                return k
        return None

    multiplicity = first_nonzero_degree

    @property
    def quadratic(self) -> tuple[int, int, int]:
        """``(alpha, beta, gamma)`` with ``A2 = alpha u^2 + beta uv + gamma v^2``."""
        form = self.forms[2] if len(self.forms) > 2 else {}
        return form.get((2, 0), 0), form.get((1, 1), 0), form.get((0, 2), 0)

    @property
    def discriminant(self) -> int:
        F = self.field
        a, b, c = self.quadratic
        return F.sub(F.mul(b, b), F.mul(F.from_int(4), F.mul(a, c)))

    @property
    def normalized_quadratic(self):
        """A2 scaled so its first nonzero coefficient is 1 (``None`` if A2 = 0)."""
        F = self.field
        coeffs = self.quadratic
        lead = next((c for c in coeffs if c), 0)
        if not lead:
            return None
        s = F.inv(lead)
        return tuple(F.mul(c, s) for c in coeffs)

    @property
    def normalized_discriminant(self):
        nq = self.normalized_quadratic
        if nq is None:
            return None
        F = self.field
        a, b, c = nq
        return F.sub(F.mul(b, b), F.mul(F.from_int(4), F.mul(a, c)))

    def quadratic_is_square(self) -> bool:
        """Whether A2 is the square of a linear form over the algebraic closure."""
        a, b, c = self.quadratic
        if (a, b, c) == (0, 0, 0):
            return True
        if self.field.p == 2:
            return b == 0
        return self.discriminant == 0

    def evaluate(self, u: int, v: int) -> int:
        F = self.field
        acc = 0
        for form in self.forms:
            for (i, j), c in form.items():
                acc = F.add(acc, F.mul(c, F.mul(F.pow(u, i), F.pow(v, j))))
        return acc


def local_expansion(f: HomPoly, point, max_degree=None) -> LocalExpansion:
    """Expand ``f`` around a point of the curve ``f = 0``.

    The chart is the point's leading coordinate.  With ``max_degree`` only the
    forms up to that degree are computed.
    """
    F = f.field
    pl = plane_of(F)
    center = pl.normalize(point)
    if f.evaluate(center) != 0:
        raise InvalidInputError(f"{center} is not on the curve")
    chart = next(i for i, c in enumerate(center) if c)
    iu, iv = [i for i in range(3) if i != chart]
    u0, v0 = center[iu], center[iv]
    top = f.degree if max_degree is None else min(max_degree, f.degree)
    p = F.p
    forms = [defaultdict(int) for _ in range(top + 1)]
    upow, vpow = {}, {}
    for e, k in f.terms.items():
        eu, ev = e[iu], e[iv]
        for i in range(min(eu, top) + 1):
            bi = binom_mod(eu, i, p)
            if not bi:
                continue
            if (eu - i) not in upow:
                upow[eu - i] = F.pow(u0, eu - i)
            ci = F.mul(k, F.mul(F.from_int(bi), upow[eu - i]))
            if not ci:
                continue
            for j in range(min(ev, top - i) + 1):
                bj = binom_mod(ev, j, p)
                if not bj:
                    continue
                if (ev - j) not in vpow:
                    vpow[ev - j] = F.pow(v0, ev - j)
                c = F.mul(ci, F.mul(F.from_int(bj), vpow[ev - j]))
                forms[i + j][(i, j)] = F.add(forms[i + j][(i, j)], c)
    cleaned = tuple({ij: c for ij, c in sorted(form.items()) if c} for form in forms)
    return LocalExpansion(F, center, chart, cleaned)


IRREDUCIBLE = "irreducible-by-criterion"
INCONCLUSIVE = "inconclusive"


def irreducibility_criterion(f: HomPoly, singular_points) -> str:
    """Geometric irreducibility from a unique singular point with a split node.

    Returns :data:`IRREDUCIBLE` when ``singular_points`` has exactly one
    member, the curve has multiplicity 2 there, and the quadratic part of the
    local expansion is not the square of a linear form.  The caller vouches
    that ``singular_points`` is the full singular locus over the closure.
    Degrees below 3 always give :data:`INCONCLUSIVE`.
    """
    pts = list(singular_points)
    if f.degree < 3 or len(pts) != 1:
        return INCONCLUSIVE
    exp = local_expansion(f, pts[0], max_degree=2)
    if exp.first_nonzero_degree != 2 or exp.quadratic_is_square():
        return INCONCLUSIVE
    return IRREDUCIBLE
