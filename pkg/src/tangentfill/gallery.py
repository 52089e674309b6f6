"""Named curves and point sets, plus the explicit tangent witness for the
degree ``q-1`` curve ``x^(q-1) + y^(q-1) + z^(q-1) - 3(x+y+z)^(q-1)``.

That curve is called "AGT" throughout the package.  For ``p > 3`` its rational
points are exactly the points with ``x*y*z*(x+y+z) != 0`` and its only
singular point is ``[1:1:1]``; :func:`find_tangent_witness` produces, for any
point ``P`` of the plane when ``q >= 11``, a smooth rational point ``Q`` whose
tangent line passes through ``P``.
"""

from dataclasses import dataclass
from math import isqrt

from .curve import PlaneCurve
from .errors import DomainError, InvalidInputError, VerificationError
from .gf import Field
from .homopoly import expand_linear_power, make_poly
from .proj import plane

CASES = ("C1", "C2.1", "C2.2", "C3-generic", "C3-b0", "C3-bneg3", "C3-b3", "C4")


def agt_curve(F: Field) -> PlaneCurve:
    """``x^(q-1) + y^(q-1) + z^(q-1) - 3(x+y+z)^(q-1) = 0`` in any characteristic."""
    q = F.q
    if q < 3:
        raise InvalidInputError("the AGT curve needs q >= 3")
    d = q - 1
    powers = make_poly(F, [(1, (d, 0, 0)), (1, (0, d, 0)), (1, (0, 0, d))])
    sum_power = expand_linear_power(F, 1, 1, 1, d)
    return PlaneCurve(powers + sum_power.scale(F.from_int(-3)), name="agt")


def _require_large_characteristic(F: Field):
    if F.p <= 3:
        raise DomainError(
            f"characteristic {F.p}: the rational-point description needs p > 3"
        )


def agt_membership(F: Field, point) -> bool:
    """``x*y*z*(x+y+z) != 0``; equivalent to lying on the AGT curve when p > 3."""
    _require_large_characteristic(F)
    x, y, z = point
    s = F.add(F.add(x, y), z)
    return bool(x and y and z and s)


def agt_tangent_coeffs(F: Field, point) -> tuple:
    """Normalised tangent line ``(3s^(q-2) - x^(q-2), ...)`` with ``s = x+y+z``.

    The coefficient vector is the gradient of the AGT polynomial, using
    ``q - 1 == -1`` in F_q; it is valid in every characteristic.
    """
    pl = plane(F)
    x, y, z = pl.normalize(point)
    q = F.q
    s = F.add(F.add(x, y), z)
    if F.p > 3:
        on = agt_membership(F, (x, y, z))
    else:
        on = agt_curve(F).contains((x, y, z))
    if not on:
        raise InvalidInputError(f"{(x, y, z)} is not on the AGT curve")
    three_s = F.mul(F.from_int(3), F.pow(s, q - 2))
    coeffs = tuple(F.sub(three_s, F.pow(c, q - 2)) for c in (x, y, z))
    if coeffs == (0, 0, 0):
        raise InvalidInputError(f"{(x, y, z)} is a singular point of the AGT curve")
    return pl.normalize(coeffs)


@dataclass(frozen=True)
class WitnessResult:
    """A smooth point ``witness`` whose tangent line contains ``query``.

    ``permutation`` ``pi`` means the case analysis ran on
    ``(P[pi[0]], P[pi[1]], P[pi[2]])``; ``scale`` is the factor applied to that
    representative of ``P`` (1 unless case 3 rescaled the coordinate sum to 3).
    """

    query: tuple
    witness: tuple
    case: str
    permutation: tuple
    scale: int
    tangent_line: tuple

    def to_dict(self) -> dict:
        return {
            "query": list(self.query),
            "witness": list(self.witness),
            "case": self.case,
            "permutation": list(self.permutation),
            "scale": self.scale,
            "tangent_line": list(self.tangent_line),
        }


def _front(i):
    # move slot i to the front, keeping the other two in order
    return {0: (0, 1, 2), 1: (1, 0, 2), 2: (2, 0, 1)}[i]


def _unpermute(perm, coords):
    out = [0, 0, 0]
    for slot, src in enumerate(perm):
        out[src] = coords[slot]
    return tuple(out)


def _case4(F: Field):
    """Scan the conic ``w^2 = (x-1)(x-9)`` for a point of ``1 = 1/x + 1/y + 1/z``."""
    pl = plane(F)
    one, two, three, nine = (F.from_int(k) for k in (1, 2, 3, 9))
    for x0 in F.elements():
        if x0 == one:
            continue
        xm1 = F.sub(x0, one)
        r = F.mul(xm1, F.sub(x0, nine))
        w = F.sqrt(r)
        if w is None:
            continue
        denom = F.inv(F.mul(two, xm1))
        for w0 in dict.fromkeys((w, F.neg(w))):
            num = F.add(F.neg(r), F.mul(F.sub(x0, three), w0))
            y0 = F.mul(num, denom)
            z0 = F.sub(F.sub(nine, x0), y0)
            if not (x0 and y0 and z0):
                continue
            Q = pl.normalize((x0, y0, z0))
            if Q != (1, 1, 1):
                return Q
    raise VerificationError("no point found on the auxiliary conic")


def find_tangent_witness(F: Field, point) -> WitnessResult:
    """Explicit smooth point of the AGT curve whose tangent passes through ``point``.

    Requires ``p > 3`` and ``q >= 11``.  The result is checked before it is
    returned; a failed check raises :class:`VerificationError`.
    """
    _require_large_characteristic(F)
    if F.q < 11:
        raise DomainError(
            f"q = {F.q}: the AGT curve is not tangent-filling for q < 11 "
            "(over F_7 no tangent line at a smooth rational point passes through [1:1:1])"
        )
    pl = plane(F)
    P = pl.normalize(point)
    zero = 0
    one, two, three, six, nine = (F.from_int(k) for k in (1, 2, 3, 6, 9))
    a0, b0, c0 = P
    total = F.add(F.add(a0, b0), c0)
    perm, scale = (0, 1, 2), one

    if P == (1, 1, 1):
        case, Q = "C4", _case4(F)
    elif total == zero:
        if a0 and b0 and c0:
            case = "C2.1"
            for perm in ((0, 1, 2), (1, 0, 2), (2, 0, 1)):
                a, b, c = (P[i] for i in perm)
                if b != c:
                    break
            x0 = F.div(a, F.sub(b, c))
            Q = _unpermute(perm, (x0, F.neg(one), one))
        else:
            case = "C2.2"
            perm = _front(P.index(0))
            Q = _unpermute(perm, (two, one, one))
    elif not (a0 and b0 and c0):
        perm = _front(P.index(0))
        scale = F.div(three, total)
        b = F.mul(P[perm[1]], scale)
        if b == zero:
            case, Qp = "C3-b0", (two, F.from_int(4), three)
        elif b == F.neg(three):
            case, Qp = "C3-bneg3", (F.neg(one), six, F.from_int(4))
        elif b == three:
            case, Qp = "C3-b3", (two, three, F.from_int(4))
        else:
            case = "C3-generic"
            inv = F.inv(F.add(three, b))
            Qp = (F.mul(F.sub(nine, F.mul(three, b)), inv), F.mul(F.mul(six, b), inv), six)
        Q = _unpermute(perm, Qp)
    else:
        case, Q = "C1", P

    Q = pl.normalize(Q)
    if not agt_membership(F, Q) or Q == (1, 1, 1):
        raise VerificationError(f"witness {Q} for {P} is not a smooth point of the curve")
    line = agt_tangent_coeffs(F, Q)
    if not pl.incident(P, line):
        raise VerificationError(f"tangent at {Q} misses {P}")
    return WitnessResult(P, Q, case, perm, scale, line)


# -- Hermitian curve --------------------------------------------------------------

def _square_root_of_order(F: Field) -> int:
    r = isqrt(F.q)
    if r * r != F.q:
        raise InvalidInputError(f"q = {F.q} is not a perfect square")
    return r


def hermitian_curve(F: Field) -> PlaneCurve:
    """``x^(r+1) + y^(r+1) + z^(r+1) = 0`` with ``r = sqrt(q)``."""
    r = _square_root_of_order(F)
    e = r + 1
    return PlaneCurve(make_poly(F, [(1, (e, 0, 0)), (1, (0, e, 0)), (1, (0, 0, e))]),
                      name="hermitian")


def hermitian_line_profile(curve: PlaneCurve) -> dict:
    """``{k: number of lines meeting the curve in exactly k rational points}``."""
    return curve.line_profile()


def hermitian_dual_image(curve: PlaneCurve) -> list:
    """Rational points pushed through ``[x:y:z] -> [x^r : y^r : z^r]``, read as lines."""
    F = curve.field
    r = _square_root_of_order(F)
    pl = curve.plane
    image = {pl.normalize(tuple(F.pow(c, r) for c in P)) for P in curve.rational_points()}
    return sorted(image, key=pl.index)


# -- small examples ------------------------------------------------------------------

def strange_example(F: Field) -> PlaneCurve:
    """``x y^(p-1) - z^p``; all its tangent lines pass through ``[0:0:1]``."""
    p = F.p
    return PlaneCurve(make_poly(F, [(1, (1, p - 1, 0)), (F.neg(1), (0, 0, p))]),
                      name="strange")


def smooth_conic(F: Field) -> PlaneCurve:
    """``x^2 + y z``, smooth in every characteristic."""
    return PlaneCurve(make_poly(F, [(1, (2, 0, 0)), (1, (0, 1, 1))]), name="conic")


GALLERY = {
    "agt": agt_curve,
    "hermitian": hermitian_curve,
    "strange": strange_example,
    "conic": smooth_conic,
}


def gallery_curve(name: str, F: Field) -> PlaneCurve:
    try:
        build = GALLERY[name]
    except KeyError:
        raise InvalidInputError(f"unknown curve {name!r}; choose from {sorted(GALLERY)}") from None
    return build(F)


def projective_triangle(F: Field) -> list:
    """Blocking set of size ``3(q+1)/2`` for odd q.

    The three vertices of the coordinate triangle together with
    ``[0:1:-s]``, ``[-s:0:1]``, ``[1:-s:0]`` for every nonzero square ``s``.
    """
    if F.p == 2:
        raise InvalidInputError("the projective triangle needs odd q")
    pl = plane(F)
    squares = sorted({F.mul(a, a) for a in range(1, F.q)})
    pts = {(1, 0, 0), (0, 1, 0), (0, 0, 1)}
    for s in squares:
        m = F.neg(s)
        pts.update(pl.normalize(t) for t in ((0, 1, m), (m, 0, 1), (1, m, 0)))
    return sorted(pts, key=pl.index)
