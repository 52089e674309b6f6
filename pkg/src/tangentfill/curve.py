"""Plane curves over F_q: rational points, singularities, tangent lines and the
point-set properties built from them (plane-filling, blocking, tangent-filling).

All scans run over the canonical point numbering of :mod:`tangentfill.proj`,
so every set-valued answer comes back in canonical order.
"""

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property
from math import isqrt

import numpy as np

from .errors import InvalidInputError, VerificationError
from .gf import quadratic_extension
from .homopoly import HomPoly, evaluate_all, linear_components
from .proj import plane


def hasse_weil_cap(d: int, q: int) -> int:
    """``q + 1 + floor((d-1)(d-2) sqrt(q))``, computed exactly."""
    m = (d - 1) * (d - 2)
    return q + 1 + isqrt(m * m * q)


def bitangent_bound(d: int) -> int:
    """``d^2 (d-1)^2 / 2`` (always an integer)."""
    return d * d * (d - 1) * (d - 1) // 2


def blokhuis_threshold(q: int) -> Fraction:
    """Minimum size ``3(q+1)/2`` of a nontrivial blocking set in PG(2, q), q prime."""
    return Fraction(3 * (q + 1), 2)


@dataclass(frozen=True, eq=False)
class PlaneCurve:
    """The curve ``poly = 0`` in P^2 over ``poly.field``.

    Irreducibility is not assumed.  Scan results are cached on the instance.
    """

    poly: HomPoly
    name: str = ""

    def __post_init__(self):
        if self.poly.is_zero():
            raise InvalidInputError("a plane curve needs a nonzero polynomial")
        if self.poly.degree < 1:
            raise InvalidInputError("a plane curve needs positive degree")

    def __repr__(self):
        label = self.name or str(self.poly)
        return f"PlaneCurve({label}, degree {self.degree} over {self.field!r})"

    @property
    def field(self):
        return self.poly.field

    @property
    def degree(self) -> int:
        return self.poly.degree

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def plane(self):
        return plane(self.field)

    # -- cached scans ---------------------------------------------------------

    @cached_property
    def values(self) -> np.ndarray:
        return evaluate_all(self.poly, self.plane)

    @cached_property
    def on_curve(self) -> np.ndarray:
        return self.values == 0

    @cached_property
    def gradient_values(self) -> np.ndarray:
        """``(3, size)`` array of the partial derivatives at every point."""
        return np.stack([evaluate_all(g, self.plane) for g in self.poly.gradient()])

    @cached_property
    def singular_mask(self) -> np.ndarray:
        return self.on_curve & ~self.gradient_values.any(axis=0)

    @cached_property
    def smooth_mask(self) -> np.ndarray:
        return self.on_curve & self.gradient_values.any(axis=0)

    @cached_property
    def tangent_index(self) -> np.ndarray:
        """Line index of the tangent at each smooth point, ``-1`` elsewhere."""
        out = np.full(self.plane.size, -1, dtype=np.int64)
        sm = np.flatnonzero(self.smooth_mask)
        if sm.size:
            gx, gy, gz = self.gradient_values[:, sm]
            pl = self.plane
            out[sm] = pl.vindex(*pl.vnormalize(gx, gy, gz))
        return out

    @cached_property
    def tangent_set(self) -> np.ndarray:
        """Sorted distinct indices of tangent lines at smooth rational points."""
        t = self.tangent_index
        return np.unique(t[t >= 0])

    @cached_property
    def coverage(self) -> np.ndarray:
        """Boolean map of points lying on at least one tangent line."""
        covered = np.zeros(self.plane.size, dtype=bool)
        if self.tangent_set.size:
            covered[self.plane.incidence[self.tangent_set].ravel()] = True
        return covered

    def _points(self, mask):
        pl = self.plane
        return [pl.point(int(i)) for i in np.flatnonzero(mask)]

    # -- point sets -----------------------------------------------------------

    def rational_points(self) -> list:
        return self._points(self.on_curve)

    def count(self) -> int:
        return int(np.count_nonzero(self.on_curve))

    def classify_points(self):
        """``(smooth, singular)`` rational points."""
        return self._points(self.smooth_mask), self._points(self.singular_mask)

    def contains(self, point) -> bool:
        return self.poly.evaluate(self.plane.normalize(point)) == 0

    def is_smooth_at(self, point) -> bool:
        pt = self.plane.normalize(point)
        return bool(self.smooth_mask[self.plane.index(pt)])

    def singular_points(self, depth: int = 1) -> list:
        """Singular points over F_{q^depth} (``depth`` 1 or 2).

        Depth 2 scans all of P^2(F_{q^2}) against the lifted polynomial, with
        the quadratic extension from :func:`quadratic_extension`; points are
        returned as index triples in that field.
        """
        if depth == 1:
            return self._points(self.singular_mask)
        if depth != 2:
            raise InvalidInputError(f"unsupported extension depth {depth}")
        if self.field.p == 2:
            raise InvalidInputError("depth-2 scans need odd q")
        ext, embed = quadratic_extension(self.field)
        f2 = self.poly.lift(ext, embed)
        pl2 = plane(ext)
        mask = evaluate_all(f2, pl2) == 0
        for g in f2.gradient():
            mask &= evaluate_all(g, pl2) == 0
        return [pl2.point(int(i)) for i in np.flatnonzero(mask)]

    def singular_points_over_extension(self, k: int) -> list:
        return self.singular_points(depth=k)

    # -- tangent lines --------------------------------------------------------

    def tangent_line(self, point) -> tuple:
        """The gradient line at a smooth rational point."""
        pl = self.plane
        pt = pl.normalize(point)
        if self.poly.evaluate(pt) != 0:
            raise InvalidInputError(f"{pt} is not on the curve")
        grad = tuple(g.evaluate(pt) for g in self.poly.gradient())
        if grad == (0, 0, 0):
            raise InvalidInputError(f"{pt} is a singular point")
        return pl.normalize(grad)

    def tangent_lines(self) -> list:
        pl = self.plane
        return [pl.point(int(i)) for i in self.tangent_set]

    tangent_line_set = tangent_lines

    def is_tangent_filling(self):
        """``(verdict, uncovered points)``."""
        uncovered = self._points(~self.coverage)
        return not uncovered, uncovered

    def dual_set_blocking(self):
        """Blocking check of the tangent lines read as points of the dual plane."""
        mask = np.zeros(self.plane.size, dtype=bool)
        mask[self.tangent_set] = True
        return self.plane.is_blocking_mask(mask)

    def dual_full_lines(self) -> list:
        """Points all of whose ``q+1`` lines are tangent lines (full dual lines)."""
        mask = np.zeros(self.plane.size, dtype=bool)
        mask[self.tangent_set] = True
        return [self.plane.point(int(i)) for i in self.plane.full_lines(mask)]

    def concurrent_tangents_point(self):
        """Common point of all F_q-tangent lines, if there are at least two."""
        ts = self.tangent_set
        if ts.size < 2:
            return None
        pl = self.plane
        common = pl.meet(pl.point(int(ts[0])), pl.point(int(ts[1])))
        rows = pl.incidence[ts]
        if np.all((rows == pl.index(common)).any(axis=1)):
            return common
        return None

    def fq_bitangents(self) -> list:
        """Lines tangent at two or more distinct smooth rational points.

        Lines contained in the curve are excluded.
        """
        t = self.tangent_index
        lines, counts = np.unique(t[t >= 0], return_counts=True)
        multi = lines[counts >= 2]
        if not multi.size:
            return []
        components = {
            self.plane.index(L) for L in linear_components(self.poly, self.plane, self.values)
        }
        return [self.plane.point(int(i)) for i in multi if int(i) not in components]

    def linear_components(self) -> list:
        return linear_components(self.poly, self.plane, self.values)

    # -- the point-set properties ----------------------------------------------------

    def is_plane_filling(self) -> bool:
        return bool(self.on_curve.all())

    def is_blocking(self):
        """``(verdict, first line missing the curve's rational points)``."""
        return self.plane.is_blocking_mask(self.on_curve)

    def line_profile(self) -> dict:
        """Multiset ``{k: number of lines meeting the curve in k rational points}``."""
        sizes = self.on_curve[self.plane.incidence].sum(axis=1)
        vals, counts = np.unique(sizes, return_counts=True)
        return {int(v): int(c) for v, c in zip(vals, counts)}

    def hasse_weil_cap(self) -> int:
        return hasse_weil_cap(self.degree, self.q)

    def maximal_candidate(self) -> bool:
        """Point count equals ``q + 1 + (d-1)(d-2) sqrt(q)``; false if q is not a square."""
        r = isqrt(self.q)
        if r * r != self.q:
            return False
        d = self.degree
        return self.count() == self.q + 1 + (d - 1) * (d - 2) * r


@dataclass
class CurveReport:
    field: dict
    degree: int
    name: str
    points: int
    smooth: int
    singular: list
    singular_ext2: list
    tangent_lines: int
    plane_filling: bool
    blocking: bool
    blocking_counterexample: tuple
    tangent_filling: bool
    uncovered: list
    dual_set_blocking: bool
    maximal_candidate: bool
    maximal_note: str
    concurrent_point: tuple
    fq_bitangents: list
    bitangent_bound: int
    hasse_weil_cap: int
    blokhuis_threshold: dict
    linear_components: list = dc_field(default_factory=list)

    def to_dict(self) -> dict:
        def pts(seq):
            return None if seq is None else [list(p) for p in seq]

        return {
            "field": self.field,
            "name": self.name,
            "degree": self.degree,
            "points": self.points,
            "smooth": self.smooth,
            "singular": pts(self.singular),
            "singular_ext2": pts(self.singular_ext2),
            "tangent_lines": self.tangent_lines,
            "plane_filling": self.plane_filling,
            "blocking": self.blocking,
            "blocking_counterexample": None if self.blocking_counterexample is None
            else list(self.blocking_counterexample),
            "tangent_filling": self.tangent_filling,
            "uncovered": pts(self.uncovered),
            "dual_set_blocking": self.dual_set_blocking,
            "maximal_candidate": self.maximal_candidate,
            "maximal_note": self.maximal_note,
            "concurrent_point": None if self.concurrent_point is None
            else list(self.concurrent_point),
            "fq_bitangents": pts(self.fq_bitangents),
            "bitangent_bound": self.bitangent_bound,
            "hasse_weil_cap": self.hasse_weil_cap,
            "blokhuis_threshold": self.blokhuis_threshold,
            "linear_components": pts(self.linear_components),
        }


def _number(fr: Fraction):
    return fr.numerator if fr.denominator == 1 else float(fr)


def analyze(curve: PlaneCurve, depth: int = 1) -> CurveReport:
    """Run every check on ``curve`` and collect the verdicts.

    Raises :class:`VerificationError` if the tangent-filling verdict disagrees
    with the blocking check of the dual tangent set.
    """
    q, d = curve.q, curve.degree
    smooth, singular = curve.classify_points()
    tf, uncovered = curve.is_tangent_filling()
    dual_blocking, _ = curve.dual_set_blocking()
    if dual_blocking != tf:
        raise VerificationError("tangent-filling disagrees with the dual blocking check")
    blocking, counter = curve.is_blocking()
    r = isqrt(q)
    note = None if r * r == q else "q is not a perfect square"
    size = int(curve.tangent_set.size)
    threshold = blokhuis_threshold(q)
    full = curve.dual_full_lines()
    applicable = q == curve.field.p and dual_blocking and not full
    return CurveReport(
        field=curve.field.spec(),
        degree=d,
        name=curve.name,
        points=curve.count(),
        smooth=len(smooth),
        singular=singular,
        singular_ext2=curve.singular_points(2) if depth >= 2 else None,
        tangent_lines=size,
        plane_filling=curve.is_plane_filling(),
        blocking=blocking,
        blocking_counterexample=counter,
        tangent_filling=tf,
        uncovered=uncovered,
        dual_set_blocking=dual_blocking,
        maximal_candidate=curve.maximal_candidate(),
        maximal_note=note,
        concurrent_point=curve.concurrent_tangents_point(),
        fq_bitangents=curve.fq_bitangents(),
        bitangent_bound=bitangent_bound(d),
        hasse_weil_cap=hasse_weil_cap(d, q),
        blokhuis_threshold={
            "threshold": _number(threshold),
            "dual_set_size": size,
            "dual_full_lines": len(full),
            "applicable": bool(applicable),
            "holds": size >= threshold,
        },
        linear_components=curve.linear_components(),
    )
