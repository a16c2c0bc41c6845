"""Exact solving of weighted power-sum systems.

A face of the sorted chamber with blocks of sizes (w_1, ..., w_d) meets the
fiber over a = (a_1, ..., a_d) where sum_k w_k z_k^j = a_j for j = 1..d.
These square systems have finitely many complex solutions; they are returned
as a rational parametrization (q, q0, q_1..q_d): each solution is
(q_1/q0, ..., q_d/q0) evaluated at a root of q, with gcd(q, q0) = 1.

Degrees one and two admit closed forms by linear elimination.  Higher degrees
go through a Groebner basis of the system, multiplication matrices on the
quotient, a radical-ization pass (adjoining squarefree univariate vanishing
polynomials), a separating linear form, and trace formulas.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .compositions import Composition, extremal_compositions
from .errors import DomainError, SolverError
from .realroots import (
    AlgebraicPoint,
    AlgebraicValue,
    UniPoly,
    interpolate,
    poly_gcd,
    rational_function_interval,
    resultant,
    sign_at,
    squarefree_part,
    thom_rooted,
)


@dataclass(frozen=True)
class Parametrization:
    """Shared root data for all solutions of one weighted system."""

    q: UniPoly
    q0: UniPoly
    coords: tuple[UniPoly, ...]


def solve_weighted_system(
    weights: Sequence[int], a: Sequence
) -> Parametrization | None:
    """Parametrize the solutions of sum_k w_k z_k^j = a_j, j = 1..len(a).

    Returns None when the system has no complex solutions at all.
    """
    if len(weights) != len(a):
        raise DomainError("need as many weights as right-hand sides")
    if not weights or any(int(w) != w or w < 1 for w in weights):
        raise DomainError("weights must be positive integers")
    w = [int(v) for v in weights]
    rhs = [Fraction(v) for v in a]
    d = len(w)
    if d == 1:
        return Parametrization(
            q=UniPoly([-rhs[0], Fraction(w[0])]),
            q0=UniPoly.constant(1),
            coords=(UniPoly.variable(),),
        )
    if d == 2:
        return _solve_pair(w, rhs)
    return _solve_generic(w, rhs)


def _solve_pair(w, rhs) -> Parametrization:
    # eliminate z1 = (a1 - w2 T)/w1 from the quadratic constraint; T = z2
    w1, w2 = Fraction(w[0]), Fraction(w[1])
    a1, a2 = rhs
    q = UniPoly([a1 * a1 - w1 * a2, -2 * a1 * w2, w2 * w2 + w1 * w2])
    q = squarefree_part(q)
    return Parametrization(
        q=q,
        q0=UniPoly.constant(w1),
        coords=(UniPoly([a1, -w2]), UniPoly([0, w1])),
    )


# -- generic path (d >= 3) --------------------------------------------------


def _solve_generic(w, rhs) -> Parametrization | None:
    import sympy

    d = len(w)
    zs = sympy.symbols(f"z1:{d + 1}")
    eqs = [
        sum(sympy.Integer(m) * z**j for m, z in zip(w, zs))
        - sympy.Rational(rhs[j - 1].numerator, rhs[j - 1].denominator)
        for j in range(1, d + 1)
    ]
    data = _quotient_data(eqs, zs)
    if data is None:
        return None
    basis, mats = data

    # adjoin squarefree univariate vanishing polynomials where the existing
    # ones have repeated roots; afterwards the ideal is radical
    extra = []
    for i, z in enumerate(zs):
        f = _krylov_min_poly(mats[i])
        sf = squarefree_part(f)
        if sf.degree < f.degree:
            extra.append(
                sum(
                    sympy.Rational(c.numerator, c.denominator) * z**k
                    for k, c in enumerate(sf.coeffs)
                )
            )
    if extra:
        data = _quotient_data(eqs + extra, zs)
        if data is None:
            raise SolverError("radical pass emptied a nonempty system")
        basis, mats = data

    D = len(basis)
    q = None
    for cand in _separating_candidates(d, D):
        mu = _mat_combine(mats, cand, D)
        f = _krylov_min_poly(mu)
        if f.degree == D:
            q = f
            break
    if q is None:
        raise SolverError("no separating linear form found")
    if poly_gcd(q, q.derivative()).degree > 0:
        raise SolverError("separating form produced a non-squarefree eliminant")

    # traces against powers of the separating matrix
    powers = [_mat_identity(D)]
    for _ in range(D - 1):
        powers.append(_mat_mul(powers[-1], mu))
    t_one = [_mat_trace(p) for p in powers]
    t_var = [
        [_trace_product(mats[i], p) for p in powers] for i in range(d)
    ]

    q0 = _trace_poly(q, t_one)
    if q0 != q.derivative():
        raise SolverError("trace identity failed; solver state is inconsistent")
    coords = tuple(_trace_poly(q, t_var[i]) for i in range(d))
    return Parametrization(q=q, q0=q0, coords=coords)


def _quotient_data(eqs, zs):
    """Monomial basis and multiplication matrices of the quotient algebra.

    None when the system is infeasible over the complex numbers.
    """
    import sympy

    G = sympy.groebner(eqs, *zs, order="grevlex")
    exprs = list(G.exprs)
    if any(e == 1 for e in exprs):
        return None
    if not G.is_zero_dimensional:
        raise SolverError("system has infinitely many complex solutions")
    order = "grevlex"
    leads = [p.monoms(order=order)[0] for p in G.polys]

    def standard(mon):
        return not any(all(m >= l for m, l in zip(mon, lead)) for lead in leads)

    nvars = len(zs)
    start = (0,) * nvars
    basis = [start]
    index = {start: 0}
    queue = [start]
    while queue:
        mon = queue.pop()
        for i in range(nvars):
            nxt = tuple(m + (1 if j == i else 0) for j, m in enumerate(mon))
            if nxt not in index and standard(nxt):
                index[nxt] = len(basis)
                basis.append(nxt)
                queue.append(nxt)
    D = len(basis)

    mats = []
    for i in range(nvars):
        cols = []
        for mon in basis:
            nxt = tuple(m + (1 if j == i else 0) for j, m in enumerate(mon))
            col = [Fraction(0)] * D
            if nxt in index:
                col[index[nxt]] = Fraction(1)
            else:
                expr = sympy.prod(z**e for z, e in zip(zs, nxt))
                rem = G.reduce(expr)[1]
                poly = sympy.Poly(rem, *zs)
                for mon2, c in poly.terms():
                    c = sympy.Rational(c)
                    col[index[tuple(mon2)]] = Fraction(int(c.p), int(c.q))
            cols.append(col)
        # column k holds the image of basis element k
        mats.append([[cols[k][r] for k in range(D)] for r in range(D)])
    return basis, mats


def _separating_candidates(nvars, D):
    for i in reversed(range(nvars)):
        yield tuple(1 if j == i else 0 for j in range(nvars))
    limit = nvars * D * D + 2
    for t in range(1, limit):
        yield tuple(t**j for j in range(nvars))


def _mat_identity(D):
    return [
        [Fraction(1) if r == c else Fraction(0) for c in range(D)]
        for r in range(D)
    ]


def _mat_combine(mats, coeffs, D):
    out = [[Fraction(0)] * D for _ in range(D)]
    for M, c in zip(mats, coeffs):
        if c == 0:
            continue
        c = Fraction(c)
        for r in range(D):
            row = M[r]
            orow = out[r]
            for k in range(D):
                orow[k] += c * row[k]
    return out


def _mat_mul(A, B):
    D = len(A)
    Bt = list(zip(*B))
    return [
        [sum(a * b for a, b in zip(row, col)) for col in Bt]
        for row in A
    ]


def _mat_trace(A):
    return sum(A[i][i] for i in range(len(A)))


def _trace_product(A, B):
    # Tr(A B) without forming the product
    total = Fraction(0)
    D = len(A)
    for r in range(D):
        arow = A[r]
        for c in range(D):
            total += arow[c] * B[c][r]
    return total


def _krylov_min_poly(M) -> UniPoly:
    """Monic minimal polynomial of M acting on the quotient, via the
    iterates of the basis element 1 (index 0)."""
    D = len(M)
    v = [Fraction(0)] * D
    v[0] = Fraction(1)
    reduced = []  # (pivot, vector, combination over original iterates)
    k = 0
    while True:
        vec = list(v)
        combo = [Fraction(0)] * (k + 1)
        combo[k] = Fraction(1)
        for pivot, bvec, bcombo in reduced:
            c = vec[pivot]
            if c:
                f = c / bvec[pivot]
                vec = [x - f * y for x, y in zip(vec, bvec)]
                combo = [
                    x - f * (bcombo[i] if i < len(bcombo) else Fraction(0))
                    for i, x in enumerate(combo)
                ]
        pivot = next((i for i, x in enumerate(vec) if x), None)
        if pivot is None:
            return UniPoly(combo)
        reduced.append((pivot, vec, combo))
        v = [sum(row[i] * v[i] for i in range(D)) for row in M]
        k += 1
        if k > D:
            raise SolverError("minimal polynomial search did not terminate")


def _trace_poly(q: UniPoly, traces) -> UniPoly:
    # coefficient of T^j is sum_{k>j} c_k * traces[k-j-1]
    c = q.coeffs
    D = q.degree
    out = []
    for j in range(D):
        out.append(
            sum((c[k] * traces[k - j - 1] for k in range(j + 1, D + 1)), Fraction(0))
        )
    return UniPoly(out)


# -- solution handling -------------------------------------------------------


def ordered_real_solutions(par: Parametrization | None) -> list[AlgebraicPoint]:
    """Real solutions with weakly increasing coordinates.

    The ordering test multiplies through by the denominator: with s0 the sign
    of q0 at the root, z_i <= z_{i+1} holds iff s0 * sign(q_i - q_{i+1}) <= 0.
    """
    if par is None:
        return []
    out = []
    for code, root in thom_rooted(par.q):
        s0 = sign_at(par.q0, root)
        if s0 == 0:
            raise SolverError("denominator vanished at a solution root")
        ok = True
        for i in range(len(par.coords) - 1):
            si = sign_at(par.coords[i] - par.coords[i + 1], root)
            if si * s0 > 0:
                ok = False
                break
        if ok:
            out.append(
                AlgebraicPoint(q=par.q, q0=par.q0, coords=par.coords, code=code)
            )
    return out


def fiber_points(weights: Sequence[int], a: Sequence) -> list[AlgebraicPoint]:
    """Ordered real solutions of the weighted system over a."""
    return ordered_real_solutions(solve_weighted_system(weights, a))


def power_sum_value(pt: AlgebraicPoint, weights: Sequence[int], j: int) -> AlgebraicValue:
    """sum_k w_k z_k^j at the point, as a comparable algebraic number."""
    if len(weights) != pt.dim:
        raise DomainError("need one weight per coordinate")
    if j < 1:
        raise DomainError("power sum index must be >= 1")
    num = UniPoly([])
    for wk, ck in zip(weights, pt.coords):
        num = num + (ck**j).scale(Fraction(wk))
    den = pt.q0**j
    exact = pt.exact_rational()
    if exact is not None:
        return AlgebraicValue.of_rational(
            sum((Fraction(wk) * zk**j for wk, zk in zip(weights, exact)), Fraction(0))
        )
    vanishing = _ratio_vanishing(pt.q, num, den)
    root = pt.root()
    return AlgebraicValue(
        vanishing,
        lambda width, num=num, den=den, root=root: rational_function_interval(
            num, den, root, width
        ),
    )


def _ratio_vanishing(q: UniPoly, num: UniPoly, den: UniPoly) -> UniPoly:
    """Nonzero polynomial vanishing at num/den evaluated at any root of q.

    Built as the resultant in T of q and Y*den - num, by interpolation in Y.
    Nodes where the T-leading coefficient would drop are skipped so every
    sample is the resultant of same-degree pairs.
    """
    m = max(den.degree, num.degree)
    top_den = den.coeffs[m] if m < len(den.coeffs) else Fraction(0)
    top_num = num.coeffs[m] if m < len(num.coeffs) else Fraction(0)
    nodes_needed = q.degree + 1
    points = []
    step = 0
    while len(points) < nodes_needed:
        y = Fraction(((step + 1) // 2) * (1 if step % 2 else -1))
        step += 1
        if top_den * y - top_num == 0:
            continue  # at most one integer drops the T-degree
        g = den.scale(y) - num
        points.append((y, resultant(q, g)))
    R = interpolate(points)
    if R.is_zero():
        raise SolverError("vanishing polynomial collapsed to zero")
    return R


def verify_fiber_point(
    pt: AlgebraicPoint, weights: Sequence[int], a: Sequence
) -> bool:
    """Exact check that the point solves the weighted system over a."""
    root = pt.root()
    for j, aj in enumerate(a, start=1):
        num = UniPoly([])
        for wk, ck in zip(weights, pt.coords):
            num = num + (ck**j).scale(Fraction(wk))
        num = num - (pt.q0**j).scale(Fraction(aj))
        if sign_at(num, root) != 0:
            return False
    return True


def point_in_box(pt: AlgebraicPoint, lo: Sequence, hi: Sequence) -> bool:
    """Exact per-coordinate containment in [lo_k, hi_k]."""
    for k in range(pt.dim):
        if pt.coordinate_sign(k, offset=Fraction(lo[k])) < 0:
            return False
        if pt.coordinate_sign(k, offset=Fraction(hi[k])) > 0:
            return False
    return True


# -- fiber minimizer ---------------------------------------------------------


@dataclass(frozen=True)
class CanonicalPoint:
    """Distinguished fiber point: p_{d+1}-argmin over the extremal faces."""

    lam: Composition
    point: AlgebraicPoint
    value: AlgebraicValue

    def embedded_point(self) -> AlgebraicPoint:
        """The point in full coordinates, each numerator repeated per block."""
        dup = []
        for part, poly in zip(self.lam.parts, self.point.coords):
            dup.extend([poly] * part)
        return AlgebraicPoint(
            q=self.point.q,
            q0=self.point.q0,
            coords=tuple(dup),
            code=self.point.code,
        )


def min_canonical(
    n: int, d: int, a: Sequence, pattern: str = "definition"
) -> CanonicalPoint | None:
    """Canonical representative of the fiber over a in the sorted chamber.

    Candidates are the ordered real solutions on every extremal face; the
    exact argmin of p_{d+1} among them is returned, None when no face meets
    the fiber (equivalently, the fiber is empty).  Ties keep the first face
    in enumeration order, so the result is deterministic.

    The fiber is connected, so any candidate is a valid representative.  For
    even d the result is the global fiber minimizer of p_{d+1} away from
    degenerate fibers; for odd d the extremal faces carry the other end of
    the p_{d+1} range, and the value returned is minimal among candidates
    only.
    """
    if len(a) != d:
        raise DomainError(f"need {d} power-sum values, got {len(a)}")
    best = None
    for lam in extremal_compositions(n, d, pattern=pattern):
        for pt in fiber_points(lam.parts, a):
            val = power_sum_value(pt, lam.parts, d + 1)
            if best is None or val.compare(best.value) < 0:
                best = CanonicalPoint(lam=lam, point=pt, value=val)
    return best
