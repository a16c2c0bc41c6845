"""Connectivity deciders built on the face graph.

`Engine` bundles the per-system state: the extremal faces, the union
graph over them, and memoized canonical points and wall verdicts.  The
module-level helpers keep one engine per (system, config, pattern)
triple, so repeated queries against the same system reuse the graph.

Three deciders are exposed.  `connectivity_symmetric_canonical` answers
whether two weakly increasing feasible points lie in the same component
of the sorted slice of S (the part with x1 <= ... <= xn), which is the
same as asking whether their orbits are connected in S.
`connected_wall` answers whether the component of x in the sorted slice
touches the wall x_i = x_{i+1}.  `connectivity_symmetric` combines the
two to decide connectivity in S itself for a possibly unsorted second
point.

Every verdict carries a JSON-ready certificate recording the reduction:
fiber data, canonical points with their graph vertices, oracle
resolutions, and for wall queries the sampled wall representatives.
Identical inputs under an identical config reproduce the certificate
verbatim.

Two caveats.  All searching happens inside the system box; a set that
leaves the box is truncated there, and certificates say so.  Systems
with equality constraints should pin `eq_delta` in the config, so that
component sampling and vertex location agree on how thick the zero set
is taken to be.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .compositions import (
    Composition,
    composition,
    embed,
    extremal_compositions,
    merge_at_wall,
    sorting_transpositions,
)
from .errors import PreconditionError, SolverError
from .oracle import OracleConfig, face_region, resolve_region, sample_components
from .polynomials import (
    FaceSystem,
    SymmetricSystem,
    power_sums,
    restrict,
    vandermonde_map,
)
from .uniongraph import UnionGraph, build_union_graph, graph_components, locate_vertex
from .vandermonde import min_canonical

__all__ = [
    "Verdict",
    "Engine",
    "get_engine",
    "connectivity_symmetric_canonical",
    "connected_wall",
    "connectivity_symmetric",
]


@dataclass(frozen=True)
class Verdict:
    """Boolean answer plus the certificate that produced it."""

    connected: bool
    certificate: dict

    def __bool__(self) -> bool:
        return self.connected


def _frac_str(v) -> str:
    f = Fraction(v)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _point_json(x) -> list[str]:
    return [_frac_str(v) for v in x]


def _decimal_json(x) -> list[float]:
    return [round(float(Fraction(v)), 9) for v in x]


def _config_json(cfg: OracleConfig) -> dict:
    return {
        "h": _frac_str(cfg.h),
        "eq_delta": None if cfg.eq_delta is None else _frac_str(cfg.eq_delta),
        "gt_gamma": _frac_str(cfg.gt_gamma),
        "max_depth": cfg.max_depth,
    }


def _summary_json(s) -> dict:
    return {
        "h_final": _frac_str(s.h_final),
        "cells": s.cells,
        "classes": s.classes,
        "levels": list(s.level_counts),
        "stabilized": s.stabilized,
    }


def _vertex_json(g: UnionGraph, idx: int) -> dict:
    v = g.vertices[idx]
    return {
        "side": v.side,
        "sets": [p + 1 for p in v.pair],
        "representative": _point_json(v.representative),
        "representative_decimal": _decimal_json(v.representative),
        "component": g.labels[idx],
    }


def _rational_embedding(emb, box) -> tuple[tuple[Fraction, ...], tuple[int, ...]]:
    """Rational stand-in for an algebraic point.

    One rational per run of equal coordinates, so block-constancy checks
    downstream see exact equality; runs are separated finely enough to
    keep their strict order.  Each run value is clamped into the box, so
    a point sitting exactly on the boundary cannot drift outside by
    rounding.
    """
    runs = emb.multiplicity_runs()
    starts, pos = [], 0
    for r in runs:
        starts.append(pos)
        pos += r
    eps = Fraction(1, 2**30)
    for _ in range(40):
        vals = emb.approx(eps)
        reps = [vals[s] for s in starts]
        if all(reps[k] < reps[k + 1] for k in range(len(reps) - 1)):
            break
        eps /= 2**8
    else:
        raise SolverError("could not separate distinct coordinate values numerically")
    lo, hi = box
    out: list[Fraction] = []
    pos = 0
    for r, v in zip(runs, reps):
        a = max(lo[pos : pos + r])
        b = min(hi[pos : pos + r])
        out.extend([min(max(v, a), b)] * r)
        pos += r
    return tuple(out), runs


class Engine:
    """Per-system state: extremal faces, union graph, memoized queries."""

    def __init__(
        self,
        sys: SymmetricSystem,
        cfg: OracleConfig | None = None,
        pattern: str = "definition",
    ):
        self.sys = sys
        self.cfg = cfg if cfg is not None else OracleConfig()
        self.pattern = pattern
        self._faces: tuple[FaceSystem, ...] | None = None
        self._graph: UnionGraph | None = None
        self._canon: dict = {}
        self._walls: dict = {}

    def faces(self) -> tuple[FaceSystem, ...]:
        if self._faces is None:
            lams = extremal_compositions(self.sys.n, self.sys.d, pattern=self.pattern)
            self._faces = tuple(restrict(self.sys, lam) for lam in lams)
        return self._faces

    def graph(self) -> UnionGraph:
        if self._graph is None:
            self._graph = build_union_graph(self.faces(), self.cfg)
        return self._graph

    # -- validation ----------------------------------------------------------

    def _check_point(self, x: Sequence, name: str, sorted_required=True):
        xs = tuple(Fraction(v) for v in x)
        if len(xs) != self.sys.n:
            raise PreconditionError(
                f"{name} has {len(xs)} coordinates, need {self.sys.n}"
            )
        if sorted_required and any(xs[k] > xs[k + 1] for k in range(len(xs) - 1)):
            raise PreconditionError(
                f"{name} must be weakly increasing; sort it first "
                "(the answer is invariant under sorting the query orbit)"
            )
        if not self.sys.box_contains(xs):
            raise PreconditionError(f"{name} lies outside the system box")
        ok, _ = self.sys.eval_membership(xs)
        if not ok:
            p = power_sums(xs, self.sys.d)
            for k, c in enumerate(self.sys.constraints):
                v = c.poly.eval(p)
                if not c.rel.holds(v, Fraction(0)):
                    raise PreconditionError(
                        f"{name} is infeasible: constraint {k + 1} "
                        f"({c.rel.name}) evaluates to {v}"
                    )
            raise PreconditionError(f"{name} is infeasible")
        return xs

    # -- canonical fiber points ----------------------------------------------

    def _canonical(self, xs: tuple) -> dict:
        hit = self._canon.get(xs)
        if hit is not None:
            return hit
        a = vandermonde_map(xs, self.sys.d)
        cp = min_canonical(self.sys.n, self.sys.d, a, pattern=self.pattern)
        if cp is None:
            raise SolverError(
                "no extremal face meets the fiber of a feasible point; "
                "this indicates lost real roots in the solver"
            )
        rational, runs = _rational_embedding(cp.embedded_point(), self.sys.box)
        data = {
            "fiber": a,
            "canonical": cp,
            "rational": rational,
            "home": composition(runs),
        }
        self._canon[xs] = data
        return data

    def _locate(self, data: dict) -> int:
        g = self.graph()
        v = locate_vertex(g, data["rational"], data["home"], self.cfg)
        return g.vertices.index(v)

    def _canonical_json(self, data: dict, idx: int) -> dict:
        g = self.graph()
        return {
            "fiber": _point_json(data["fiber"]),
            "face": list(data["canonical"].lam.parts),
            "type": list(data["home"].parts),
            "point": _point_json(data["rational"]),
            "point_decimal": _decimal_json(data["rational"]),
            "vertex": _vertex_json(g, idx),
        }

    def _graph_json(self) -> dict:
        g = self.graph()
        res = []
        for f in self.faces():
            summ = resolve_region(face_region(f), self.cfg).summary()
            res.append({"face": list(f.lam.parts), **_summary_json(summ)})
        return {
            "vertices": len(g.vertices),
            "edges": len(g.edges),
            "components": g.component_count,
            "resolutions": res,
        }

    # -- deciders --------------------------------------------------------------

    def _orbit_verdict(self, xs: tuple, ys: tuple) -> Verdict:
        dx = self._canonical(xs)
        dy = self._canonical(ys)
        ix = self._locate(dx)
        iy = self._locate(dy)
        g = self.graph()
        same = g.labels[ix] == g.labels[iy]
        cert = {
            "kind": "orbit",
            "connected": same,
            "pattern": self.pattern,
            "config": _config_json(self.cfg),
            "faces": [list(f.lam.parts) for f in self.faces()],
            "x": _point_json(xs),
            "y": _point_json(ys),
            "x_canonical": self._canonical_json(dx, ix),
            "y_canonical": self._canonical_json(dy, iy),
            "graph": self._graph_json(),
            "box_note": "search is clamped to the system box",
        }
        return Verdict(same, cert)

    def canonical(self, x: Sequence, y: Sequence) -> Verdict:
        """Orbit connectivity for weakly increasing feasible x and y."""
        xs = self._check_point(x, "x")
        ys = self._check_point(y, "y")
        return self._orbit_verdict(xs, ys)

    def wall(self, x: Sequence, i: int) -> Verdict:
        """Does the sorted-slice component of x touch the wall x_i = x_{i+1}?

        Each extremal face is merged across the wall, the merged face set
        is sampled, and every sampled representative is tested for orbit
        connectivity with x.  A single success is a witness; exhausting
        all representatives gives a certified no.
        """
        xs = self._check_point(x, "x")
        if not 1 <= i <= self.sys.n - 1:
            raise PreconditionError(f"wall index {i} outside 1..{self.sys.n - 1}")
        key = (xs, i)
        hit = self._walls.get(key)
        if hit is not None:
            return hit

        trials = []
        witness = None
        seen = set()
        for lam in extremal_compositions(self.sys.n, self.sys.d, pattern=self.pattern):
            merged = merge_at_wall(lam, i)
            if merged in seen:
                continue
            seen.add(merged)
            face = restrict(self.sys, merged)
            reps = sample_components(face_region(face), self.cfg)
            for z in reps:
                xz = embed(merged, z)
                sub = self._orbit_verdict(xs, xz)
                trials.append(
                    {
                        "face": list(merged.parts),
                        "representative": _point_json(xz),
                        "representative_decimal": _decimal_json(xz),
                        "connected": sub.connected,
                        "components": [
                            sub.certificate["x_canonical"]["vertex"]["component"],
                            sub.certificate["y_canonical"]["vertex"]["component"],
                        ],
                    }
                )
                if sub.connected and witness is None:
                    witness = {
                        "face": list(merged.parts),
                        "representative": _point_json(xz),
                        "orbit": sub.certificate,
                    }
            if witness is not None:
                break

        connected = witness is not None
        cert = {
            "kind": "wall",
            "wall": i,
            "connected": connected,
            "pattern": self.pattern,
            "config": _config_json(self.cfg),
            "x": _point_json(xs),
            "trials": trials,
            "witness": witness,
            "graph": self._graph_json(),
            "box_note": "search is clamped to the system box",
        }
        out = Verdict(connected, cert)
        self._walls[key] = out
        return out

    def symmetric(self, x: Sequence, y: Sequence) -> Verdict:
        """Connectivity of x and y in S itself; y may be unsorted.

        y is sorted by adjacent swaps; the sorted copy must be
        orbit-connected to x, and every wall used by a swap must be
        reachable from the component of x.
        """
        xs = self._check_point(x, "x")
        ys = self._check_point(y, "y", sorted_required=False)
        word, ysort = sorting_transpositions(ys)
        base = self._orbit_verdict(xs, ysort)

        walls_needed = []
        for i in word:
            if i not in walls_needed:
                walls_needed.append(i)
        wall_certs = {}
        connected = base.connected
        if connected:
            for i in walls_needed:
                wv = self.wall(xs, i)
                wall_certs[str(i)] = wv.certificate
                if not wv.connected:
                    connected = False
                    break
        cert = {
            "kind": "symmetric",
            "connected": connected,
            "pattern": self.pattern,
            "config": _config_json(self.cfg),
            "x": _point_json(xs),
            "y": _point_json(ys),
            "sorted_y": _point_json(ysort),
            "word": list(word),
            "orbit": base.certificate,
            "walls": wall_certs,
        }
        return Verdict(connected, cert)


_ENGINES: dict = {}


def get_engine(
    sys: SymmetricSystem,
    cfg: OracleConfig | None = None,
    pattern: str = "definition",
) -> Engine:
    """Engine for the triple (system, config, pattern), cached."""
    cfg = cfg if cfg is not None else OracleConfig()
    key = (sys, cfg, pattern)
    eng = _ENGINES.get(key)
    if eng is None:
        eng = Engine(sys, cfg, pattern)
        _ENGINES[key] = eng
        while len(_ENGINES) > 16:
            _ENGINES.pop(next(iter(_ENGINES)))
    return eng


def connectivity_symmetric_canonical(
    sys: SymmetricSystem,
    x: Sequence,
    y: Sequence,
    cfg: OracleConfig | None = None,
    pattern: str = "definition",
) -> Verdict:
    """Are the orbits of the sorted points x and y connected inside S?"""
    return get_engine(sys, cfg, pattern).canonical(x, y)


def connected_wall(
    sys: SymmetricSystem,
    x: Sequence,
    i: int,
    cfg: OracleConfig | None = None,
    pattern: str = "definition",
) -> Verdict:
    """Does the component of x in the sorted slice meet x_i = x_{i+1}?"""
    return get_engine(sys, cfg, pattern).wall(x, i)


def connectivity_symmetric(
    sys: SymmetricSystem,
    x: Sequence,
    y: Sequence,
    cfg: OracleConfig | None = None,
    pattern: str = "definition",
) -> Verdict:
    """Are x and y connected inside S?  x must be sorted, y may not be."""
    return get_engine(sys, cfg, pattern).symmetric(x, y)
