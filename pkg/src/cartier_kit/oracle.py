"""Independent cross-checks for the closed-form Cartier computation.

Nothing here touches h_rank, decomp or cartier_block: each routine rebuilds
its answer from the field and polynomial primitives only.
"""

from __future__ import annotations

from math import gcd

from .curve import CurveInstance, RamificationType, eigen_data, eigen_dims, type_genus
from .fields import FieldCtx
from .polynomials import Poly, classical_cartier_rational, gcd_monic


def cartier_via_rational(c: CurveInstance, i: int, j: int, _cache: dict = None) -> list:
    """Coordinates of C(omega_{i,j}) in the basis omega_{sigma(i), 1..d_sigma}.

    omega_{i,j} = x^(j-1) h_min_i f^eps dx / y^(p sigma), so its image is
    y^(-sigma) C(x^(j-1) h_min_i f^eps dx); dividing by h_min_sigma leaves the
    coordinate polynomial.
    """
    ed = eigen_data(c, i)
    if not 1 <= j <= ed.d_i:
        raise ValueError(f"basis index {j} outside [1, {ed.d_i}]")
    key = (i, "G")
    if _cache is not None and key in _cache:
        G, target = _cache[key]
    else:
        G = c.f ** ed.eps_i * ed.h_min_i
        target = eigen_data(c, ed.sigma_i)
        if _cache is not None:
            _cache[key] = (G, target)
    H = classical_cartier_rational(G.shift(j - 1))
    q, r = divmod(H, target.h_min_i)
    if r:
        raise AssertionError(f"h_min_{ed.sigma_i} does not divide C(omega_{i},{j})")
    if q.deg >= target.d_i:
        raise AssertionError(f"C(omega_{i},{j}) leaves D_{ed.sigma_i}")
    return [q[e] for e in range(target.d_i)]


def rational_block(c: CurveInstance, i: int) -> list:
    """Full d_sigma x d_i matrix assembled column by column from cartier_via_rational."""
    d = eigen_dims(c)
    ed = eigen_data(c, i)
    ds = d[ed.sigma_i - 1]
    cache = {}
    cols = [cartier_via_rational(c, i, j, cache) for j in range(1, ed.d_i + 1)]
    return [[col[e] for col in cols] for e in range(ds)]


def cartier_manin_hyperelliptic(c: CurveInstance) -> list:
    """Cartier-Manin matrix of y^2 = f(x), deg f = 2g + 2, p odd.

    With f^((p-1)/2) = sum c_m x^m, the image of x^(s-1) dx / y is
    sum_t c_{p(t+1)-s}^(1/p) x^t dx / y, so entry [t][s-1] = c_{p(t+1)-s}^(1/p).
    """
    if c.n != 2:
        raise ValueError("Cartier-Manin matrix needs a double cover")
    p = c.p
    if p == 2:
        raise ValueError("Cartier-Manin matrix needs odd characteristic")
    f = c.f
    if f.deg % 2:
        raise ValueError("f must have even degree (normalize infinity first)")
    if gcd_monic(f, f.derivative()).deg != 0:
        raise ValueError("f is not squarefree")
    g = f.deg // 2 - 1
    power = f ** ((p - 1) // 2)
    zero = c.ctx.zero
    mat = []
    for t in range(g):
        row = []
        for s in range(1, g + 1):
            idx = p * (t + 1) - s
            row.append(power.coeffs[idx].pth_root() if 0 <= idx < len(power.coeffs) else zero)
        mat.append(row)
    return mat


def plain_rank(rows) -> int:
    """Rank by inserting vectors into a pivot-indexed echelon basis."""
    basis = {}
    for vec in rows:
        v = list(vec)
        for lead in sorted(basis):
            if v[lead]:
                b = basis[lead]
                f = v[lead]
                v = [x - f * y for x, y in zip(v, b)]
        lead = next((k for k, x in enumerate(v) if x), None)
        if lead is None:
            continue
        inv = v[lead].inv()
        v = [x * inv for x in v]
        for other, b in list(basis.items()):
            if b[lead]:
                f = b[lead]
                basis[other] = [x - f * y for x, y in zip(b, v)]
        basis[lead] = v
    return len(basis)


def lemma_rank_dim(polys: list, m: int) -> int:
    """dim span{ f_i x^e : 0 <= e < m } by brute-force elimination."""
    if not polys:
        raise ValueError("need at least one polynomial")
    if m < 0:
        raise ValueError("m must be non-negative")
    nz = [f for f in polys if f]
    if not nz or m == 0:
        return 0
    width = max(f.deg for f in nz) + m
    vecs = []
    for f in nz:
        for e in range(m):
            g = f.shift(e)
            vecs.append([g[k] for k in range(width)])
    return plain_rank(vecs)


def _nth_power_counts(ctx: FieldCtx, n: int) -> dict:
    counts = {}
    for y in ctx.elements():
        v = y ** n
        counts[v] = counts.get(v, 0) + 1
    return counts


def count_points(ctx: FieldCtx, n: int, f: Poly) -> int:
    """Rational points on the smooth model of y^n = f(x) over ctx.

    Each finite root of f and the point at infinity (when branched) must have
    multiplicity coprime to n, so each carries exactly one place.
    """
    counts = _nth_power_counts(ctx, n)
    total = 0
    for x in ctx.elements():
        v = f(x)
        total += 1 if not v else counts.get(v, 0)
    N = f.deg
    if N % n == 0:
        # unbranched at infinity: places over x = oo are v^n = lc(f)
        total += counts.get(f.lead(), 0)
    else:
        total += 1
    return total


def _curve_type(ctx: FieldCtx, n: int, f: Poly) -> RamificationType:
    if gcd_monic(f, f.derivative()).deg == 0:
        mults = [1] * f.deg
    else:
        mults = []
        rest = f
        for a in ctx.elements():
            lin = Poly(ctx, [-a, 1])
            e = 0
            while True:
                q, r = divmod(rest, lin)
                if r:
                    break
                rest, e = q, e + 1
            if e:
                mults.append(e)
        if rest.deg != 0:
            raise ValueError("repeated factors of f must split over the field")
    inf = -sum(mults) % n
    if inf:
        mults.append(inf)
    rtype = RamificationType(n, tuple(m % n for m in mults))
    if any(gcd(n, m) != 1 for m in rtype.mults):
        raise ValueError("point counting needs multiplicities coprime to n")
    return rtype


def supersingular_by_count(ctx: FieldCtx, n: int, f: Poly) -> bool:
    """Supersingularity of the genus-1 curve y^n = f(x) by exhaustive counting.

    Over F_q, #E = q + 1 - t and E is supersingular iff p divides t.
    """
    rtype = _curve_type(ctx, n, f)
    if type_genus(rtype) != 1:
        raise ValueError(f"curve of type {rtype} has genus {type_genus(rtype)}, not 1")
    trace = ctx.q + 1 - count_points(ctx, n, f)
    return trace % ctx.p == 0


def supersingular_instance(c: CurveInstance) -> bool:
    return supersingular_by_count(c.ctx, c.n, c.f)
