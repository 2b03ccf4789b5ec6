"""Exact polyhedral geometry for string polytopes and their duals."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

import numpy as np

from .algebra.linalg import affine_rank, nullspace, rank, rref
from .cones import Inequality, delta_hrep, lambda_inequalities
from .diagram import build_diagram
from .weyl import ReducedWord

log = logging.getLogger(__name__)

Point = tuple  # tuple of Fraction


class Unbounded(ValueError):
    pass


class Empty(ValueError):
    pass


class NormalizationFailure(AssertionError):
    pass


class NonIntegralDual(AssertionError):
    pass


class DegenerateFan(ValueError):
    pass


@dataclass
class ExactPolytope:
    dim: int
    hrep: list[Inequality]
    vrep: list[Point]
    facet_flags: dict[str, bool] = field(default_factory=dict)
    # tight[v] = indices into hrep of the inequalities tight at vertex v
    tight: list[frozenset[int]] = field(default_factory=list)
    vertex_labels: list[str] | None = None

    @property
    def facets(self) -> list[Inequality]:
        return [h for h in self.hrep if self.facet_flags.get(h.id)]

    def facet_vertex_sets(self) -> list[frozenset[int]]:
        out = []
        for idx, h in enumerate(self.hrep):
            if self.facet_flags.get(h.id):
                out.append(frozenset(v for v, t in enumerate(self.tight) if idx in t))
        return out

    def vertex(self, label: str) -> Point:
        if self.vertex_labels is None:
            raise KeyError(label)
        return self.vrep[self.vertex_labels.index(label)]

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for v in self.vrep for x in v)

    def contains(self, x: Sequence, strict: bool = False) -> bool:
        for h in self.hrep:
            s = h.value(x)
            if s < 0 or (strict and s == 0):
                return False
        return True


def _primitive(v: Sequence[Fraction]) -> tuple[Fraction, ...]:
    den = lcm(*(x.denominator for x in v)) if v else 1
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    g = g or 1
    return tuple(Fraction(x // g) for x in ints)


def _dot(a: Sequence, b: Sequence) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def double_description(rows: list[tuple[Fraction, ...]]) -> list[tuple[Fraction, ...]]:
    """Extreme rays of the pointed cone {y : a . y <= 0 for every row a}."""
    d = len(rows[0])
    # initial simplicial cone from d independent rows
    chosen: list[int] = []
    for i in range(len(rows)):
        if rank([rows[j] for j in chosen + [i]]) == len(chosen) + 1:
            chosen.append(i)
            if len(chosen) == d:
                break
    if len(chosen) < d:
        raise Unbounded("constraint matrix has a lineality space")
    A0 = [rows[i] for i in chosen]
    rays: list[tuple[Fraction, ...]] = []
    zeros: list[frozenset[int]] = []
    for j in range(d):
        # column j of -A0^{-1}: solve A0 r = -e_j
        e = [Fraction(-int(i == j)) for i in range(d)]
        aug = [list(A0[i]) + [e[i]] for i in range(d)]
        R, _ = rref(aug)
        r = _primitive([R[i][d] for i in range(d)])
        rays.append(r)
        zeros.append(frozenset(chosen[i] for i in range(d) if i != j))
    done = set(chosen)
    for idx, a in enumerate(rows):
        if idx in done:
            continue
        vals = [_dot(a, r) for r in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        if not pos:
            zeros = [z | {idx} if vals[i] == 0 else z for i, z in enumerate(zeros)]
            done.add(idx)
            continue
        neg = [i for i, v in enumerate(vals) if v < 0]
        new_rays, new_zeros = [], []
        for i, v in enumerate(vals):
            if v <= 0:
                new_rays.append(rays[i])
                new_zeros.append(zeros[i] | {idx} if v == 0 else zeros[i])
        for p in pos:
            for q in neg:
                common = zeros[p] & zeros[q]
                if len(common) < d - 2:
                    continue
                if any(common <= zeros[r] for r in range(len(rays)) if r != p and r != q):
                    continue
                r = _primitive([vals[p] * y - vals[q] * x for x, y in zip(rays[p], rays[q])])
                new_rays.append(r)
                new_zeros.append(common | {idx})
        rays, zeros = new_rays, new_zeros
        done.add(idx)
    return rays


def vertices(hrep: list[Inequality]) -> ExactPolytope:
    """V-representation of {x : M x <= b} by the double description method."""
    if not hrep:
        raise Unbounded("no inequalities")
    N = hrep[0].N
    rows = [tuple(Fraction(m) for m in h.M) + (-Fraction(h.rhs),) for h in hrep]
    rows.append((Fraction(0),) * N + (Fraction(-1),))
    rays = double_description(rows)
    verts = []
    for r in rays:
        s = r[-1]
        if s == 0:
            raise Unbounded(f"recession direction {tuple(str(x) for x in r[:-1])}")
        verts.append(tuple(x / s for x in r[:-1]))
    if not verts:
        raise Empty("no feasible point")
    return polytope_from(hrep, verts)


def polytope_from(hrep: list[Inequality], verts: Sequence[Point], labels: list[str] | None = None) -> ExactPolytope:
    """Attach incidences and facet flags to a known vertex list."""
    if labels is None:
        verts = sorted(set(tuple(Fraction(x) for x in v) for v in verts))
    else:
        verts = [tuple(Fraction(x) for x in v) for v in verts]
    N = len(verts[0])
    tight = [frozenset(i for i, h in enumerate(hrep) if h.value(v) == 0) for v in verts]
    for v in verts:
        if any(h.value(v) < 0 for h in hrep):
            raise AssertionError(f"vertex {v} violates the H-representation")
    full = affine_rank(verts)
    flags = {}
    for i, h in enumerate(hrep):
        on = [verts[j] for j, t in enumerate(tight) if i in t]
        flags[h.id] = len(on) >= full and len(on) < len(verts) and affine_rank(on) == full - 1
    return ExactPolytope(N, list(hrep), list(verts), flags, tight, labels)


def lambda_apex(word: ReducedWord) -> tuple[Fraction, ...]:
    """Solve all lambda inequalities with equality, from x_N upward."""
    lam = lambda_inequalities(build_diagram(word))
    N = len(lam)
    x = [Fraction(0)] * N
    for i in range(N - 1, -1, -1):
        M = lam[i].M
        x[i] = Fraction(2) - sum(M[j] * x[j] for j in range(i + 1, N))
    return tuple(x)


@dataclass(frozen=True)
class InteriorPoint:
    coords: tuple[Fraction, ...]
    # slack b_d - M_d . P for every inequality id
    slacks: dict = field(default_factory=dict, compare=False, hash=False)


def interior_point(word: ReducedWord, poly: ExactPolytope | None = None) -> InteriorPoint:
    """Half the lambda apex, checked to be strictly interior with unit slack on every facet."""
    P = tuple(x / 2 for x in lambda_apex(word))
    if poly is None:
        poly = vertices(delta_hrep(word))
    slacks = {h.id: h.value(P) for h in poly.hrep}
    bad = {i: s for i, s in slacks.items() if s <= 0}
    if bad:
        raise NormalizationFailure(f"P={P} not strictly interior: {bad}")
    off = {i: s for i, s in slacks.items() if poly.facet_flags.get(i) and s != 1}
    if off:
        raise NormalizationFailure(f"facets with b - M.P != 1 at P: {off}")
    return InteriorPoint(P, slacks)


def dual_polytope(poly: ExactPolytope, P: InteriorPoint | Sequence) -> ExactPolytope:
    """Polar dual {y : <y, x - P> <= 1 for x in poly}; facet (M, b) becomes the vertex M / (b - M.P)."""
    coords = P.coords if isinstance(P, InteriorPoint) else tuple(Fraction(x) for x in P)
    verts, labels, nonvertex = [], [], {}
    for h in poly.hrep:
        slack = h.value(coords)
        if slack <= 0:
            raise ValueError(f"P is not strictly interior (inequality {h.id})")
        point = tuple(Fraction(m) / slack for m in h.M)
        if not poly.facet_flags.get(h.id):
            nonvertex[h.id] = point
            continue
        if any(x.denominator != 1 for x in point) or point != tuple(Fraction(m) for m in h.M):
            raise NonIntegralDual(f"dual vertex of {h.id} is {tuple(map(str, point))}, expected M_d")
        verts.append(point)
        labels.append(h.id)
    if nonvertex:
        log.warning("non-facet inequalities give non-vertex dual points: %s", sorted(nonvertex))
    hrep = []
    for idx, v in enumerate(poly.vrep):
        normal = tuple(Fraction(a) - Fraction(b) for a, b in zip(v, coords))
        hrep.append(Inequality(normal, Fraction(1), "dual", f"V{idx + 1}", index=idx + 1))
    dual = polytope_from(hrep, verts, labels)
    dual.nonvertex_points = nonvertex  # type: ignore[attr-defined]
    return dual


def faces(poly: ExactPolytope) -> set[frozenset[int]]:
    """All nonempty faces as vertex-index sets (the polytope itself included)."""
    facets = poly.facet_vertex_sets()
    whole = frozenset(range(len(poly.vrep)))
    found = {whole}
    frontier = [whole]
    while frontier:
        nxt = []
        for f in frontier:
            for g in facets:
                h = f & g
                if h and h not in found:
                    found.add(h)
                    nxt.append(h)
        frontier = nxt
    return found


def f_vector(poly: ExactPolytope) -> tuple[int, ...]:
    """(f_0, ..., f_d) with f_d = 1 for the polytope itself."""
    counts: dict[int, int] = {}
    for f in faces(poly):
        d = affine_rank([poly.vrep[i] for i in f])
        counts[d] = counts.get(d, 0) + 1
    top = max(counts)
    return tuple(counts.get(d, 0) for d in range(top + 1))


def facet_quadruple_test(dual: ExactPolytope, quad: Sequence[str], top: int, bot: int) -> tuple[bool, dict[str, Fraction]]:
    """Evaluate L(y) = y_top - y_bot + 1 on every dual vertex.

    True iff L vanishes on the four quadruple vertices and is >= 0 elsewhere.
    """
    values = {}
    for label, v in zip(dual.vertex_labels, dual.vrep):
        values[label] = v[top - 1] - v[bot - 1] + 1
    ok = all(values[q] == 0 for q in quad) and all(x >= 0 for x in values.values())
    return ok, values


def fan_ranks(rays: Sequence[Sequence], cones: Sequence[Sequence[int]], N: int) -> tuple[int, int]:
    """(class group rank, Picard rank) of a complete fan over Q.

    Picard rank = dim{functions on the rays that extend linearly on every
    maximal cone} - N; a linear relation among the rays of a cone must hold
    for the values as well.
    """
    rays = [tuple(Fraction(x) for x in r) for r in rays]
    nrays = len(rays)
    constraints = []
    for idx, members in enumerate(cones):
        members = sorted(members)
        cone = [rays[r] for r in members]
        if rank(cone) != N:
            raise DegenerateFan(f"maximal cone {idx} is not full-dimensional")
        cols = [[cone[r][c] for r in range(len(cone))] for c in range(N)]
        for rel in nullspace(cols, len(cone)):
            row = [Fraction(0)] * nrays
            for r, c in zip(members, rel):
                row[r] = c
            constraints.append(row)
    pl_dim = nrays - (rank(constraints) if constraints else 0)
    return nrays - N, pl_dim - N


def toric_ranks(poly: ExactPolytope) -> tuple[int, int]:
    """Ranks for the normal fan of ``poly``: rays are facet normals, maximal cones vertex cones."""
    facet_idx = [i for i, h in enumerate(poly.hrep) if poly.facet_flags.get(h.id)]
    pos = {i: r for r, i in enumerate(facet_idx)}
    rays = [poly.hrep[i].M for i in facet_idx]
    cones = [[pos[i] for i in t if i in pos] for t in poly.tight]
    return fan_ranks(rays, cones, poly.dim)


def face_fan_ranks(poly: ExactPolytope) -> tuple[int, int]:
    """Ranks for the fan over the faces of ``poly`` (origin assumed interior).

    Rays are the vertices, maximal cones the cones over facets.  For a dual
    polytope this is the normal fan of the primal, reached without it.
    """
    return fan_ranks(poly.vrep, poly.facet_vertex_sets(), poly.dim)


def class_rank(poly: ExactPolytope) -> int:
    return toric_ranks(poly)[0]


def picard_rank(poly: ExactPolytope) -> int:
    return toric_ranks(poly)[1]


def lattice_points(poly: ExactPolytope) -> list[tuple[int, ...]]:
    """Integer points of ``poly``, scanned over the vertex bounding box."""
    N = poly.dim
    lo = [int(np.floor(float(min(v[i] for v in poly.vrep)))) - 1 for i in range(N)]
    hi = [int(np.ceil(float(max(v[i] for v in poly.vrep)))) + 1 for i in range(N)]
    # exact integer check: scale each inequality to integer coefficients
    A, b = [], []
    for h in poly.hrep:
        den = lcm(*(Fraction(m).denominator for m in h.M), Fraction(h.rhs).denominator)
        A.append([int(Fraction(m) * den) for m in h.M])
        b.append(int(Fraction(h.rhs) * den))
    A = np.array(A, dtype=np.int64)
    b = np.array(b, dtype=np.int64)
    grids = np.meshgrid(*[np.arange(l, h + 1, dtype=np.int64) for l, h in zip(lo, hi)], indexing="ij")
    pts = np.stack([g.ravel() for g in grids], axis=1)
    ok = np.all(pts @ A.T <= b, axis=1)
    return sorted(tuple(int(x) for x in p) for p in pts[ok])


def string_polytope(word: ReducedWord) -> ExactPolytope:
    return vertices(delta_hrep(word))


def cube(N: int, side: int = 2) -> list[Inequality]:
    """H-representation of [0, side]^N (used as a smooth reference)."""
    out = []
    for i in range(N):
        e = [0] * N
        e[i] = 1
        out.append(Inequality(tuple(e), side, "lambda", f"U{i + 1}", index=i + 1))
        out.append(Inequality(tuple(-x for x in e), 0, "string", f"D{i + 1}"))
    return out
