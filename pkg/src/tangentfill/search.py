"""Random curves and the search for low-degree tangent-filling curves.

Candidates are evaluated in batches: each curve is a coefficient vector over
the monomial basis, so its values and gradient on the whole plane are field
linear combinations of precomputed monomial tables.
"""

import random
from dataclasses import dataclass, field as dc_field
from math import comb

import numpy as np

from .curve import PlaneCurve
from .errors import InvalidInputError
from .gf import Field
from .homopoly import HomPoly, irreducibility_criterion, monomials
from .proj import plane

MAX_EXHAUSTIVE = 1 << 24
_DENSE_LIMIT = 2500


def random_curve(F: Field, d: int, seed=0) -> PlaneCurve:
    """Curve of degree ``d`` with coefficients drawn uniformly from F.

    ``seed`` is an int or a :class:`random.Random`; the zero polynomial is redrawn.
    """
    if d < 1:
        raise InvalidInputError("degree must be at least 1")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    monos = monomials(d)
    while True:
        coeffs = [rng.randrange(F.q) for _ in monos]
        if any(coeffs):
            break
    return PlaneCurve(HomPoly(F, d, dict(zip(monos, coeffs))))


class BatchKernel:
    """Tangent-filling verdicts for many degree-``d`` curves at once."""

    def __init__(self, F: Field, d: int):
        self.field, self.degree = F, d
        self.plane = pl = plane(F)
        self.monomials = monos = monomials(d)
        xs, ys, zs = pl.coords.T
        powers = [[F.vpow(c, k) for k in range(d + 1)] for c in (xs, ys, zs)]

        def table(e):
            return F.vmul(F.vmul(powers[0][e[0]], powers[1][e[1]]), powers[2][e[2]])

        self.values = np.stack([table(e) for e in monos])
        grads = []
        for v in range(3):
            rows = []
            for e in monos:
                k = e[v] % F.p
                if k == 0:
                    rows.append(np.zeros(pl.size, dtype=np.int64))
                    continue
                lowered = list(e)
                lowered[v] -= 1
                rows.append(F.vmul(F.from_int(k), table(lowered)))
            grads.append(np.stack(rows))
        self.gradients = grads
        self.dense = None
        if pl.size <= _DENSE_LIMIT:
            inc = np.zeros((pl.size, pl.size), dtype=np.float32)
            inc[np.repeat(np.arange(pl.size), F.q + 1), pl.incidence.ravel()] = 1
            self.dense = inc

    def _combine(self, coeffs, table):
        F = self.field
        return F.vsum(F.vmul(coeffs[:, m, None], table[m][None, :])
                      for m in range(len(self.monomials)))

    def tangent_filling(self, coeffs: np.ndarray) -> np.ndarray:
        """Boolean verdict per row of a ``(batch, monomials)`` coefficient array."""
        F, pl = self.field, self.plane
        coeffs = np.asarray(coeffs, dtype=np.int64)
        vals = self._combine(coeffs, self.values)
        gx, gy, gz = (self._combine(coeffs, g) for g in self.gradients)
        smooth = (vals == 0) & ((gx != 0) | (gy != 0) | (gz != 0))
        rows, cols = np.nonzero(smooth)
        onehot = np.zeros((coeffs.shape[0], pl.size), dtype=bool)
        if rows.size:
            lines = pl.vindex(*pl.vnormalize(gx[rows, cols], gy[rows, cols], gz[rows, cols]))
            onehot[rows, lines] = True
        if self.dense is not None:
            hits = onehot.astype(np.float32) @ self.dense
            return (hits > 0).all(axis=1)
        out = np.zeros(coeffs.shape[0], dtype=bool)
        for b in range(coeffs.shape[0]):
            covered = np.zeros(pl.size, dtype=bool)
            covered[pl.incidence[np.flatnonzero(onehot[b])].ravel()] = True
            out[b] = covered.all()
        return out


@dataclass
class SearchOutcome:
    q: int
    degree: int
    mode: str
    examined: int
    found: list
    parameter_dim: int
    seed: int
    budget: int
    per_degree: list = dc_field(default_factory=list)
    linear_components: list = None
    criterion: str = None

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "degree": self.degree,
            "mode": self.mode,
            "examined": self.examined,
            "found": self.found,
            "parameter_dim": self.parameter_dim,
            "seed": self.seed,
            "budget": self.budget,
            "per_degree": self.per_degree,
            "linear_components": self.linear_components,
            "criterion": self.criterion,
        }


def _projective_vectors(q: int, m: int, batch: int):
    """Coefficient vectors whose top nonzero entry is 1, in increasing base-q order."""
    for lead in range(m):
        count = q ** lead
        for start in range(0, count, batch):
            r = np.arange(start, min(count, start + batch), dtype=np.int64)
            out = np.zeros((r.size, m), dtype=np.int64)
            for j in range(lead):
                out[:, j] = r % q
                r = r // q
            out[:, lead] = 1
            yield out


def _sampled_vectors(F: Field, m: int, budget: int, rng: random.Random, batch: int):
    left = budget
    while left:
        n = min(batch, left)
        rows = []
        for _ in range(n):
            while True:
                c = [rng.randrange(F.q) for _ in range(m)]
                if any(c):
                    break
            rows.append(c)
        left -= n
        yield np.array(rows, dtype=np.int64)


def search_min_tangent_filling(F: Field, d_max: int, mode: str = "auto",
                               budget: int = 10000, seed: int = 0,
                               batch: int = 512) -> SearchOutcome:
    """Look for a tangent-filling curve of degree ``1..d_max``, lowest degree first.

    ``mode`` is ``auto`` (exhaustive when the ``q^M`` coefficient vectors of a
    degree fit in ``budget``), ``exhaustive`` or ``sampled``.  Exhaustive mode
    walks one representative per projective class.  The first hit in
    canonical candidate order is returned; it is not certified irreducible.
    """
    if mode not in ("auto", "exhaustive", "sampled"):
        raise InvalidInputError(f"unknown search mode {mode!r}")
    if d_max < 1:
        raise InvalidInputError("d_max must be at least 1")
    if budget < 1:
        raise InvalidInputError("budget must be positive")
    rng = random.Random(seed)
    q = F.q
    if mode == "exhaustive":
        classes = (q ** comb(d_max + 2, 2) - 1) // (q - 1)
        if classes > MAX_EXHAUSTIVE:
            raise InvalidInputError(
                f"degree {d_max} over F_{q} has too many curves for exhaustive search")
    per_degree, examined = [], 0
    used_mode, d = mode, 1
    for d in range(1, d_max + 1):
        m = comb(d + 2, 2)
        total = q ** m
        exhaustive = mode == "exhaustive" or (mode == "auto" and total <= budget)
        used_mode = "exhaustive" if exhaustive else "sampled"
        if exhaustive:
            stream = _projective_vectors(q, m, batch)
        else:
            stream = _sampled_vectors(F, m, budget, rng, batch)
        kernel = BatchKernel(F, d)
        seen, hit = 0, None
        for block in stream:
            verdict = kernel.tangent_filling(block)
            if verdict.any():
                k = int(np.argmax(verdict))
                seen += k + 1
                hit = block[k]
                break
            seen += block.shape[0]
        examined += seen
        per_degree.append({"degree": d, "mode": used_mode, "candidates": seen,
                           "found": hit is not None})
        if hit is not None:
            poly = HomPoly(F, d, dict(zip(kernel.monomials, (int(c) for c in hit))))
            curve = PlaneCurve(poly)
            singular = curve.singular_points()
            return SearchOutcome(
                q=q, degree=d, mode=used_mode, examined=examined,
                found=poly.to_spec()["terms"], parameter_dim=m - 1,
                seed=seed, budget=budget, per_degree=per_degree,
                linear_components=[list(L) for L in curve.linear_components()],
                criterion=irreducibility_criterion(poly, singular),
            )
    return SearchOutcome(q=q, degree=d, mode=used_mode, examined=examined, found=None,
                         parameter_dim=comb(d + 2, 2) - 1, seed=seed, budget=budget,
                         per_degree=per_degree)
