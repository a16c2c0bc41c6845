"""Grid connectivity queries on box-bounded semi-algebraic regions.

Two operations are needed by the rest of the package: one sample point per
connected component of a region, and a yes/no connectivity answer for a
pair of points in a region.  Both are served here by an explicitly
approximate backend: classify the cells of a regular grid through the
membership predicate, join face-adjacent feasible cells with a union-find,
and halve the pitch until the class count repeats.  Every answer exposes
the resolution it was computed at, so callers can report it instead of
pretending the result is exact.

Cell centers are tested with these conventions:

  * GE constraints are taken as written, g >= 0.
  * EQ constraints are thickened to |g| <= delta, so a codimension-one set
    shows up as a thin slab of feasible cells.  By default delta tracks
    the current pitch.
  * GT constraints are shrunk to g >= gamma * pitch; open sets lose a
    one-cell margin and cannot leak through a pinch point.

Query points (arguments of `connected`) get the laxer `Relation.holds`
test instead, with the EQ delta as slack, because they are usually
rational approximations of exact algebraic points sitting on a constraint
boundary.  A query point whose own cell center is infeasible is bridged
to the face-adjacent feasible cells, if any.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import DomainError, PreconditionError
from .polynomials import (
    ExpandedPoly,
    FaceSystem,
    Relation,
    SymmetricSystem,
    restrict,
)

Atom = tuple[ExpandedPoly, Relation]


@dataclass(frozen=True)
class Region:
    """Membership predicate on a box: all of `requires`, none of `excludes`.

    Each entry of `excludes` is itself a conjunction of atoms; a point is
    excluded when every atom of that entry holds.  This is exactly the
    shape a set difference needs.  An empty entry excludes everything
    (the empty conjunction is the whole space).

    `eq_delta`, when set, pins the EQ slab width for this region and
    overrides the config policy.
    """

    dim: int
    requires: tuple[Atom, ...]
    box: tuple[tuple[Fraction, ...], tuple[Fraction, ...]]
    excludes: tuple[tuple[Atom, ...], ...] = ()
    eq_delta: Fraction | None = None

    def __post_init__(self):
        if self.dim < 1:
            raise DomainError("region dimension must be positive")
        lo, hi = self.box
        if len(lo) != self.dim or len(hi) != self.dim:
            raise DomainError("box vectors must match the region dimension")
        if any(a > b for a, b in zip(lo, hi)):
            raise DomainError("box has lo > hi")
        for poly, _ in self.requires:
            if poly.nvars != self.dim:
                raise DomainError("constraint arity differs from region dimension")
        for group in self.excludes:
            for poly, _ in group:
                if poly.nvars != self.dim:
                    raise DomainError("excluded constraint arity differs from region dimension")
        if self.eq_delta is not None and self.eq_delta < 0:
            raise DomainError("eq_delta must be nonnegative")


@dataclass(frozen=True)
class OracleConfig:
    """Grid resolution policy.

    `h` is the starting pitch; refinement halves it up to `max_depth`
    times.  `eq_delta` of None means the EQ slab width follows the
    current pitch.  `gt_gamma` scales the shrinking margin of GT
    constraints, also in units of the current pitch.
    """

    h: Fraction = Fraction(1, 2)
    eq_delta: Fraction | None = None
    gt_gamma: Fraction = Fraction(1)
    max_depth: int = 5

    def __post_init__(self):
        if self.h <= 0:
            raise DomainError("grid pitch must be positive")
        if self.eq_delta is not None and self.eq_delta < 0:
            raise DomainError("eq_delta must be nonnegative")
        if self.gt_gamma < 0:
            raise DomainError("gt_gamma must be nonnegative")
        if self.max_depth < 0:
            raise DomainError("max_depth must be nonnegative")


@dataclass(frozen=True)
class GridSummary:
    """Resolution record attached to certificates."""

    h_final: Fraction
    cells: int
    classes: int
    level_counts: tuple[int, ...]

    @property
    def stabilized(self) -> bool:
        return len(self.level_counts) >= 2 and self.level_counts[-1] == self.level_counts[-2]


def _effective_delta(region: Region, cfg: OracleConfig, h: Fraction) -> Fraction:
    if region.eq_delta is not None:
        return region.eq_delta
    if cfg.eq_delta is not None:
        return cfg.eq_delta
    return h


def _cell_atom_holds(rel: Relation, value: Fraction, delta: Fraction, margin: Fraction) -> bool:
    if rel is Relation.EQ:
        return abs(value) <= delta
    if rel is Relation.GT:
        return value >= margin
    return value >= 0


_REL_TEXT = {Relation.GE: ">= 0", Relation.EQ: "= 0", Relation.GT: "> 0"}


def format_poly(poly: ExpandedPoly) -> str:
    """Readable rendering in variables z1..zl, for diagnostics."""
    if not poly.terms:
        return "0"
    bits = []
    for exp, c in sorted(poly.terms.items(), reverse=True):
        mono = "*".join(
            f"z{k + 1}" + (f"^{e}" if e > 1 else "")
            for k, e in enumerate(exp)
            if e
        )
        if not mono:
            bits.append(str(c))
        elif c == 1:
            bits.append(mono)
        elif c == -1:
            bits.append("-" + mono)
        else:
            bits.append(f"{c}*{mono}")
    return " + ".join(bits).replace("+ -", "- ")


def point_feasible(
    region: Region,
    x: Sequence,
    cfg: OracleConfig,
    h: Fraction | None = None,
) -> tuple[bool, str]:
    """Test a rational point against the predicate with query-side slack.

    Returns (ok, reason).  The reason names the first violated
    constraint, or the excluded set the point fell into.  `h` selects
    the pitch whose tolerances apply; default is the starting pitch.
    """
    if len(x) != region.dim:
        raise PreconditionError(
            f"point has {len(x)} coordinates, region has dimension {region.dim}"
        )
    pt = tuple(Fraction(v) for v in x)
    h = cfg.h if h is None else h
    delta = _effective_delta(region, cfg, h)
    margin = h * cfg.gt_gamma
    lo, hi = region.box
    for k in range(region.dim):
        if not lo[k] <= pt[k] <= hi[k]:
            return False, (
                f"coordinate {k + 1} = {pt[k]} outside box [{lo[k]}, {hi[k]}]"
            )
    for poly, rel in region.requires:
        v = poly.eval(pt)
        if not rel.holds(v, delta):
            return False, (
                f"constraint {format_poly(poly)} {_REL_TEXT[rel]} fails, value {v}"
            )
    for j, group in enumerate(region.excludes):
        if all(_cell_atom_holds(rel, poly.eval(pt), delta, margin) for poly, rel in group):
            return False, f"point lies in excluded set {j + 1}"
    return True, ""


def _find(parent: dict, a: int) -> int:
    while parent[a] != a:
        parent[a] = parent[parent[a]]
        a = parent[a]
    return a


class _Grid:
    """Classification of one region at one fixed pitch."""

    def __init__(self, region: Region, cfg: OracleConfig, h: Fraction):
        self.h = h
        self.dim = region.dim
        delta = _effective_delta(region, cfg, h)
        margin = h * cfg.gt_gamma
        lo, hi = region.box
        self.lo = lo
        m: list[int] = []
        widths: list[Fraction] = []
        centers: list[list[Fraction]] = []
        for k in range(region.dim):
            span = hi[k] - lo[k]
            if span == 0:
                m.append(1)
                widths.append(Fraction(0))
                centers.append([lo[k]])
                continue
            count = int(-((-span) // h))
            w = span / count
            m.append(count)
            widths.append(w)
            centers.append([lo[k] + w * Fraction(2 * i + 1, 2) for i in range(count)])
        self.m = m
        self.widths = widths
        self.centers = centers
        strides = [0] * region.dim
        s = 1
        for k in reversed(range(region.dim)):
            strides[k] = s
            s *= m[k]
        self.strides = strides

        atoms = list(region.requires)
        for group in region.excludes:
            atoms.extend(group)
        need = [0] * region.dim
        for poly, _ in atoms:
            for k, e in enumerate(poly.max_exponents()):
                if e > need[k]:
                    need[k] = e
        # pows[k][i][e] = centers[k][i] ** e, shared across all atoms
        pows = []
        for k in range(region.dim):
            axis = []
            for c in centers[k]:
                row = [Fraction(1)] * (need[k] + 1)
                for e in range(1, need[k] + 1):
                    row[e] = row[e - 1] * c
                axis.append(row)
            pows.append(axis)

        def value(poly: ExpandedPoly, idx: tuple[int, ...]) -> Fraction:
            total = Fraction(0)
            for exp, coeff in poly.terms.items():
                v = coeff
                for k, e in enumerate(exp):
                    if e:
                        v = v * pows[k][idx[k]][e]
                total += v
            return total

        def ok(idx: tuple[int, ...]) -> bool:
            for poly, rel in region.requires:
                if not _cell_atom_holds(rel, value(poly, idx), delta, margin):
                    return False
            for group in region.excludes:
                if all(
                    _cell_atom_holds(rel, value(poly, idx), delta, margin)
                    for poly, rel in group
                ):
                    return False
            return True

        feasible: set[int] = set()
        parent: dict[int, int] = {}
        order: list[int] = []
        # lexicographic walk; the smaller neighbor along each axis was
        # already visited, so one backward look per axis suffices
        for idx in itertools.product(*(range(c) for c in m)):
            if not ok(idx):
                continue
            flat = 0
            for i, st in zip(idx, strides):
                flat += i * st
            feasible.add(flat)
            parent[flat] = flat
            order.append(flat)
            for k in range(region.dim):
                if idx[k]:
                    nb = flat - strides[k]
                    if nb in feasible:
                        ra, rb = _find(parent, flat), _find(parent, nb)
                        if ra != rb:
                            parent[ra] = rb
        self.feasible = feasible
        self._parent = parent
        roots: dict[int, int] = {}
        reps: list[tuple[Fraction, ...]] = []
        for flat in order:
            r = _find(parent, flat)
            if r not in roots:
                roots[r] = len(roots)
                reps.append(self.center_of(self.unflatten(flat)))
        self._roots = roots
        self.representatives = reps
        self.class_count = len(roots)

    def unflatten(self, flat: int) -> tuple[int, ...]:
        return tuple((flat // self.strides[k]) % self.m[k] for k in range(self.dim))

    def center_of(self, idx: tuple[int, ...]) -> tuple[Fraction, ...]:
        return tuple(self.centers[k][idx[k]] for k in range(self.dim))

    def cell_of(self, x: Sequence) -> tuple[int, ...]:
        """Index of the cell containing x, clamped to the box."""
        idx = []
        for k in range(self.dim):
            if self.widths[k] == 0:
                idx.append(0)
                continue
            i = int((Fraction(x[k]) - self.lo[k]) // self.widths[k])
            idx.append(min(max(i, 0), self.m[k] - 1))
        return tuple(idx)

    def class_of_cell(self, idx: tuple[int, ...]) -> int | None:
        flat = 0
        for i, st in zip(idx, self.strides):
            flat += i * st
        if flat not in self.feasible:
            return None
        return self._roots[_find(self._parent, flat)]

    def classes_near(self, idx: tuple[int, ...]) -> set[int]:
        """Class of the cell, or of its feasible face neighbors."""
        own = self.class_of_cell(idx)
        if own is not None:
            return {own}
        out = set()
        for k in range(self.dim):
            for step in (-1, 1):
                j = idx[k] + step
                if 0 <= j < self.m[k]:
                    nb = self.class_of_cell(idx[:k] + (j,) + idx[k + 1 :])
                    if nb is not None:
                        out.add(nb)
        return out


class RegionResolution:
    """Stabilized classification of one region.

    Refinement halves the pitch until two consecutive levels report the
    same class count, or the depth cap is hit.  The final level answers
    all queries.
    """

    def __init__(self, region, cfg, grid, level_counts):
        self.region = region
        self.cfg = cfg
        self._grid = grid
        self.level_counts = level_counts

    @property
    def h(self) -> Fraction:
        return self._grid.h

    @property
    def representatives(self) -> list[tuple[Fraction, ...]]:
        return list(self._grid.representatives)

    @property
    def class_count(self) -> int:
        return self._grid.class_count

    def point_classes(self, x: Sequence) -> frozenset[int]:
        return frozenset(self._grid.classes_near(self._grid.cell_of(x)))

    def connected_points(self, x: Sequence, y: Sequence) -> bool:
        gx = self._grid.cell_of(x)
        gy = self._grid.cell_of(y)
        if gx == gy:
            return True
        return bool(self._grid.classes_near(gx) & self._grid.classes_near(gy))

    def summary(self) -> GridSummary:
        return GridSummary(
            h_final=self._grid.h,
            cells=len(self._grid.feasible),
            classes=self._grid.class_count,
            level_counts=self.level_counts,
        )


def resolve_region(region: Region, cfg: OracleConfig | None = None) -> RegionResolution:
    """Classify at h, h/2, ... until the class count repeats, depth capped."""
    return _resolve_cached(region, cfg or OracleConfig())


@lru_cache(maxsize=32)
def _resolve_cached(region: Region, cfg: OracleConfig) -> RegionResolution:
    h = cfg.h
    grid = _Grid(region, cfg, h)
    counts = [grid.class_count]
    for _ in range(cfg.max_depth):
        if len(counts) >= 2 and counts[-1] == counts[-2]:
            break
        h = h / 2
        grid = _Grid(region, cfg, h)
        counts.append(grid.class_count)
    return RegionResolution(region, cfg, grid, tuple(counts))


def sample_components(region: Region, cfg: OracleConfig | None = None) -> list[tuple[Fraction, ...]]:
    """One cell-center representative per detected component.

    An empty region yields an empty list, not an error.  Representatives
    are ordered by first appearance in the lexicographic cell walk, so
    repeated calls agree.
    """
    return resolve_region(region, cfg).representatives


def connected(
    region: Region,
    x: Sequence,
    y: Sequence,
    cfg: OracleConfig | None = None,
) -> bool:
    """True when the cells of x and y share a union-find class.

    Both points must satisfy the predicate with the slack of the final
    pitch; an infeasible point raises PreconditionError naming the
    violated constraint.
    """
    cfg = cfg or OracleConfig()
    res = resolve_region(region, cfg)
    for name, pt in (("x", x), ("y", y)):
        good, why = point_feasible(region, pt, cfg, res.h)
        if not good:
            raise PreconditionError(f"query point {name} is infeasible: {why}")
    return res.connected_points(x, y)


def face_region(face: FaceSystem, include_chamber: bool = True) -> Region:
    """Region of a face system in its block coordinates.

    The chamber ordering z1 <= ... <= zl is appended as GE atoms by
    default; pass include_chamber=False for the bare constraint set.
    """
    req = list(face.constraints)
    if include_chamber:
        req.extend((p, Relation.GE) for p in face.chamber_polys())
    return Region(dim=face.dim, requires=tuple(req), box=face.box)


def full_space_region(sys: SymmetricSystem) -> Region:
    """The whole system as a region of R^n, no ordering imposed."""
    face = restrict(sys, (1,) * sys.n)
    return Region(dim=sys.n, requires=face.constraints, box=face.box)


def brute_force_connected(
    sys: SymmetricSystem,
    x: Sequence,
    y: Sequence,
    cfg: OracleConfig | None = None,
) -> bool:
    """Connectivity in the unrestricted system, straight grid in R^n.

    This is the ground-truth side of the validation harness.  It scales
    badly with n by design; keep n small.
    """
    return connected(full_space_region(sys), x, y, cfg)
