"""The Cartier operator on regular differentials of a Kummer cover.

The space of regular differentials splits into eigenspaces D_1, ..., D_{n-1}
and the Cartier operator maps D_i into D_sigma(i).  Each restriction is
computed in closed form from the Frobenius decomposition of

    h_rank_i = f^eps(i) * h_min_i / h_min_sigma(i)^p = sum_t f_{i,t}^p x^t,

namely  C(x^(j-1) h_min_i dx / y^i) = x^floor((j-1)/p) f_{i,(-j mod p)} * omega_{sigma(i),1}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .curve import CurveInstance, eigen_data, eigen_dims, genus, sigma_eps
from .polynomials import Poly, frobenius_decompose, gcd_monic, vanishing_order


class InvariantViolation(AssertionError):
    """A structural identity failed; signals a bug, never bad user input."""


def _require(cond, msg):
    if not cond:
        raise InvariantViolation(msg)


def h_rank(c: CurveInstance, i: int) -> Poly:
    ed = eigen_data(c, i)
    sigma, eps = ed.sigma_i, ed.eps_i
    ed_s = eigen_data(c, sigma)
    num = c.f ** eps * ed.h_min_i
    q, r = divmod(num, ed_s.h_min_i ** c.p)
    _require(not r, f"h_min_{sigma}^p does not divide f^eps h_min_{i}")
    p = c.p
    _require(q.deg == p * ed_s.d_i - ed.d_i + p - 1,
             f"deg h_rank_{i} = {q.deg}, expected {p * ed_s.d_i - ed.d_i + p - 1}")
    for alpha in c.branch_points:
        _require(vanishing_order(q, alpha) < p, f"h_rank_{i} vanishes to order >= p at {alpha!r}")
    return q


def decomp(c: CurveInstance, i: int, h: Poly = None) -> list[Poly]:
    h = h_rank(c, i) if h is None else h
    parts = frobenius_decompose(h)
    g = Poly.zero(c.ctx)
    for part in parts:
        if part:
            g = gcd_monic(g, part)
    _require(g.deg == 0, f"components of h_rank_{i} share a factor {g!r}")
    d = eigen_dims(c)
    di, ds = d[i - 1], d[sigma_eps(c, i)[0] - 1]
    cap = ds - di // c.p
    _require(max(part.deg for part in parts) == cap,
             f"max component degree of h_rank_{i} is not {cap}")
    _require(parts[(-di - 1) % c.p].deg == cap, "degree cap not attained at the leading residue")
    return parts


@dataclass
class CartierBlock:
    i: int
    target: int
    matrix: list  # d_target rows of d_i entries
    d_source: int = 0

    @property
    def shape(self):
        return (len(self.matrix), self.d_source)

    def column(self, j: int) -> list:
        return [row[j - 1] for row in self.matrix]


def cartier_block(c: CurveInstance, i: int, parts: list = None) -> CartierBlock:
    """Matrix of C: D_i -> D_sigma(i) in the bases omega_{i,j}, omega_{sigma(i),j}.

    Column j holds the coefficients of x^floor((j-1)/p) f_{i,(-j mod p)}.
    """
    p = c.p
    d = eigen_dims(c)
    sigma = sigma_eps(c, i)[0]
    di, ds = d[i - 1], d[sigma - 1]
    if di == 0:
        return CartierBlock(i, sigma, [[] for _ in range(ds)], 0)
    parts = decomp(c, i) if parts is None else parts
    cols = []
    for j in range(1, di + 1):
        img = parts[-j % p].shift((j - 1) // p)
        _require(img.deg < ds, f"C(omega_{i},{j}) has degree {img.deg} >= d_sigma = {ds}")
        cols.append([img[e] for e in range(ds)])
    matrix = [[cols[j][e] for j in range(di)] for e in range(ds)]
    return CartierBlock(i, sigma, matrix, di)


def rank_semilinear(m) -> int:
    """Rank of a p^{-1}-linear map given by its matrix on a basis.

    The image of sum c_j v_j is sum c_j^{1/p} C(v_j); since c -> c^{1/p} is a
    bijection of a perfect field, the image is the column span, so the plain
    matrix rank is the answer.
    """
    rows = [list(r) for r in m]
    if not rows or not rows[0]:
        return 0
    nrows, ncols = len(rows), len(rows[0])
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, nrows) if rows[r][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = rows[rank][col].inv()
        prow = [v * inv for v in rows[rank]]
        rows[rank] = prow
        for r in range(nrows):
            if r != rank and rows[r][col]:
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], prow)]
        rank += 1
        if rank == nrows:
            break
    return rank


@dataclass
class BlockSummary:
    i: int
    sigma: int
    d_i: int
    d_sigma: int
    block_rank: int


@dataclass
class AnalysisReport:
    instance: str
    genus: int
    a_number: int
    rank: int
    per_block: list
    lower_bound: int
    upper_bound: int
    superspecial: bool
    dmax: int
    char2_formula_value: int | None
    p: int
    n: int
    verification: dict | None = field(default=None)

    def to_dict(self) -> dict:
        out = {
            "instance": self.instance,
            "genus": self.genus,
            "a_number": self.a_number,
            "rank": self.rank,
            "per_block": [
                {"i": b.i, "sigma": b.sigma, "d_i": b.d_i, "d_sigma": b.d_sigma,
                 "block_rank": b.block_rank}
                for b in self.per_block
            ],
            "lower_bound": self.lower_bound,
            "upper_bound": self.upper_bound,
            "superspecial": self.superspecial,
            "dmax": self.dmax,
            "char2_formula_value": self.char2_formula_value,
        }
        if self.verification is not None:
            out["verification"] = self.verification
        return out


def bounds(d: list, p: int, n: int):
    lower = upper = 0
    for i in range(1, n):
        s = i * pow(p, -1, n) % n
        lower += min(2 * (d[i - 1] // p), d[s - 1])
        upper += min(d[i - 1], d[s - 1])
    return lower, upper


def analyze(c: CurveInstance, blocks: dict = None) -> AnalysisReport:
    """Genus, Cartier rank, a-number and the bound data of one cover.

    ``blocks`` (optional) receives the CartierBlock of every eigenindex.
    """
    g = genus(c)
    d = eigen_dims(c)
    p, n = c.p, c.n
    per_block = []
    total = 0
    for i in range(1, n):
        blk = cartier_block(c, i)
        if blocks is not None:
            blocks[i] = blk
        br = rank_semilinear(blk.matrix)
        total += br
        per_block.append(BlockSummary(i, blk.target, d[i - 1], d[blk.target - 1], br))
    lower, upper = bounds(d, p, n)
    a = g - total
    return AnalysisReport(
        instance=c.encode(),
        genus=g,
        a_number=a,
        rank=total,
        per_block=per_block,
        lower_bound=lower,
        upper_bound=upper,
        superspecial=(a == g),
        dmax=max(d, default=0),
        char2_formula_value=(g - upper) if p == 2 else None,
        p=p,
        n=n,
    )


@dataclass
class BoundCheck:
    theorem1_holds: bool
    cor12_consistent: bool
    cor13_consistent: bool
    re_curve_consistent: bool
    per_block_ok: list
    char2_consistent: bool

    @property
    def ok(self) -> bool:
        # Re's bound is informational only.
        return (self.theorem1_holds and self.cor12_consistent and self.cor13_consistent
                and all(self.per_block_ok) and self.char2_consistent)

    def failures(self) -> list[str]:
        out = []
        if not self.theorem1_holds:
            out.append("theorem1")
        if not self.cor12_consistent:
            out.append("cor12")
        if not self.cor13_consistent:
            out.append("cor13")
        if not all(self.per_block_ok):
            out.append("cor43")
        if not self.char2_consistent:
            out.append("char2")
        return out


def check_bounds(report: AnalysisReport) -> BoundCheck:
    g, a, p, n = report.genus, report.a_number, report.p, report.n
    gap = g - a
    theorem1 = report.lower_bound <= gap <= report.upper_bound
    cor12 = True
    if n == 2 and p > 2:
        # g - a <= 2g/p - 2 is forbidden for hyperelliptic curves
        cor12 = not (p * gap <= 2 * g - 2 * p)
    cor13 = True
    if report.superspecial:
        cor13 = report.dmax < p and g <= (p - 1) * (n - 1)
    re_bound = Fraction(2 * g, p * (p + 1)) + Fraction(p - 1, p + 1)
    re_curve = not (gap < re_bound)
    per_block = [
        min(2 * (b.d_i // p), b.d_sigma) <= b.block_rank <= min(b.d_i, b.d_sigma)
        for b in report.per_block
    ]
    char2 = report.char2_formula_value is None or report.char2_formula_value == a
    return BoundCheck(theorem1, cor12, cor13, re_curve, per_block, char2)
