"""The projective plane PG(2, q) and its dual.

Points and lines are tuples of three field indices, normalised so that the
leftmost nonzero coordinate is 1.  A line ``(a, b, c)`` is the set
``a*x + b*y + c*z = 0``; lines are just points of the dual plane, so the same
encoding and the same canonical numbering serve both.

Canonical order: ``[1:y:z]`` (``y`` major, then ``z``), then ``[0:1:z]``,
then ``[0:0:1]``.  The position of a point in this order is its *point index*.
"""

from functools import cached_property, lru_cache

import numpy as np

from .errors import InvalidInputError
from .gf import Field


class ProjectivePlane:
    """Incidence structure of PG(2, q) over a given field.

    The expensive tables are built lazily and cached.  Use :func:`plane` to get
    the shared instance for a field.
    """

    def __init__(self, field: Field):
        self.field = field
        self.q = field.q
        self.size = self.q * self.q + self.q + 1

    def __repr__(self):
        return f"PG(2, {self.q}) over {self.field!r}"

    # -- normalisation and numbering ----------------------------------------

    def normalize(self, triple) -> tuple[int, int, int]:
        F = self.field
        x, y, z = (int(c) for c in triple)
        for c in (x, y, z):
            if not 0 <= c < F.q:
                raise InvalidInputError(f"coordinate {c} outside {F!r}")
        lead = x or y or z
        if lead == 0:
            raise InvalidInputError("the zero triple is not a projective point")
        if lead == 1:
            return (x, y, z)
        s = F.inv(lead)
        return (F.mul(x, s), F.mul(y, s), F.mul(z, s))

    def index(self, point) -> int:
        """Canonical index of an already normalised triple."""
        x, y, z = point
        q = self.q
        if x:
            return y * q + z
        if y:
            return q * q + z
        return q * q + q

    def point(self, i: int) -> tuple[int, int, int]:
        q = self.q
        if not 0 <= i < self.size:
            raise IndexError(i)
        if i < q * q:
            return (1, i // q, i % q)
        if i < q * q + q:
            return (0, 1, i - q * q)
        return (0, 0, 1)

    def vnormalize(self, x, y, z):
        """Normalise coordinate arrays; raises on any all-zero triple."""
        F = self.field
        x, y, z = (np.asarray(a, dtype=np.int64) for a in (x, y, z))
        lead = np.where(x != 0, x, np.where(y != 0, y, z))
        if np.any(lead == 0):
            raise InvalidInputError("the zero triple is not a projective point")
        s = F.vinv(lead)
        return F.vmul(x, s), F.vmul(y, s), F.vmul(z, s)

    def vindex(self, x, y, z):
        """Canonical indices of normalised coordinate arrays."""
        q = self.q
        return np.where(x != 0, y * q + z, np.where(y != 0, q * q + z, q * q + q))

    # -- enumeration --------------------------------------------------------

    @cached_property
    def coords(self) -> np.ndarray:
        """``(size, 3)`` array of all normalised points in canonical order."""
        q = self.q
        out = np.zeros((self.size, 3), dtype=np.int64)
        i = np.arange(q * q, dtype=np.int64)
        out[: q * q, 0] = 1
        out[: q * q, 1] = i // q
        out[: q * q, 2] = i % q
        out[q * q : q * q + q, 1] = 1
        out[q * q : q * q + q, 2] = np.arange(q)
        out[-1, 2] = 1
        return out

    def points(self) -> list[tuple[int, int, int]]:
        return [tuple(r) for r in self.coords.tolist()]

    lines = points

    @cached_property
    def incidence(self) -> np.ndarray:
        """``(size, q+1)`` array: row ``i`` lists the points on line ``i``, sorted.

        By duality row ``i`` also lists the lines through point ``i``.
        """
        F, q = self.field, self.q
        out = np.empty((self.size, q + 1), dtype=np.int64)
        t = np.arange(q, dtype=np.int64)
        chunk = max(1, (1 << 21) // (q + 1))
        for start in range(0, self.size, chunk):
            L = self.coords[start : start + chunk]
            a, b, c = L[:, 0], L[:, 1], L[:, 2]
            zero = np.zeros_like(a)
            # two independent points on each line from cross products with
            # coordinate vectors: L x e_y = (-c, 0, a), L x e_z = (b, -a, 0)
            # and L x e_x = (0, c, -b)
            use_a = a != 0
            b1 = np.where(use_a[:, None], np.stack([F.vneg(c), zero, a], 1),
                          np.stack([zero, c, F.vneg(b)], 1))
            b2 = np.where(use_a[:, None], np.stack([b, F.vneg(a), zero], 1),
                          np.where((b != 0)[:, None], np.stack([b, zero, zero], 1),
                                   np.stack([F.vneg(c), zero, zero], 1)))
            xs = F.vadd(b1[:, 0, None], F.vmul(t[None, :], b2[:, 0, None]))
            ys = F.vadd(b1[:, 1, None], F.vmul(t[None, :], b2[:, 1, None]))
            zs = F.vadd(b1[:, 2, None], F.vmul(t[None, :], b2[:, 2, None]))
            nx, ny, nz = self.vnormalize(xs, ys, zs)
            idx = self.vindex(nx, ny, nz)
            bx, by, bz = self.vnormalize(b2[:, 0], b2[:, 1], b2[:, 2])
            last = self.vindex(bx, by, bz)
            rows = np.concatenate([idx, last[:, None]], axis=1)
            rows.sort(axis=1)
            out[start : start + chunk] = rows
        return out

    # -- incidence ----------------------------------------------------------

    def incident(self, point, line) -> bool:
        F = self.field
        acc = 0
        for u, v in zip(point, line):
            acc = F.add(acc, F.mul(int(u), int(v)))
        return acc == 0

    def cross(self, u, v) -> tuple[int, int, int]:
        F = self.field
        u0, u1, u2 = (int(c) for c in u)
        v0, v1, v2 = (int(c) for c in v)
        raw = (
            F.sub(F.mul(u1, v2), F.mul(u2, v1)),
            F.sub(F.mul(u2, v0), F.mul(u0, v2)),
            F.sub(F.mul(u0, v1), F.mul(u1, v0)),
        )
        if raw == (0, 0, 0):
            raise InvalidInputError("the two arguments coincide")
        return self.normalize(raw)

    def line_through(self, p1, p2) -> tuple[int, int, int]:
        """The unique line through two distinct points."""
        return self.cross(p1, p2)

    def meet(self, l1, l2) -> tuple[int, int, int]:
        """The intersection point of two distinct lines."""
        return self.cross(l1, l2)

    def points_on_line(self, line) -> list[tuple[int, int, int]]:
        row = self.incidence[self.index(self.normalize(line))]
        return [self.point(int(i)) for i in row]

    def lines_through(self, point) -> list[tuple[int, int, int]]:
        return self.points_on_line(point)

    def is_blocking_set(self, points):
        """Whether ``points`` meets every line.

        Returns ``(True, None)`` or ``(False, line)`` with the first line in
        canonical order containing none of the points.
        """
        mask = np.zeros(self.size, dtype=bool)
        for pt in points:
            mask[self.index(self.normalize(pt))] = True
        return self.is_blocking_mask(mask)

    def is_blocking_mask(self, mask: np.ndarray):
        hit = mask[self.incidence].any(axis=1)
        if hit.all():
            return True, None
        return False, self.point(int(np.argmin(hit)))

    def full_lines(self, mask: np.ndarray) -> np.ndarray:
        """Indices of lines all of whose points are in ``mask``."""
        return np.flatnonzero(mask[self.incidence].all(axis=1))


@lru_cache(maxsize=64)
def plane(field: Field) -> ProjectivePlane:
    """Shared :class:`ProjectivePlane` for ``field``."""
    return ProjectivePlane(field)
