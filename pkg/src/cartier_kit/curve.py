"""Kummer covers y^n = f(x) of the projective line and their differential data."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import gcd

from .fields import FieldCtx, FieldElem, embedding, make_field
from .polynomials import Poly

INF = "inf"

# Extension factors tried when a field has no spare point for the Moebius move.
MAX_EXTENSION_FACTOR = 4


class FieldTooSmall(ValueError):
    pass


@dataclass(frozen=True)
class RamificationType:
    n: int
    mults: tuple

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"cover order must be >= 2, got {self.n}")
        object.__setattr__(self, "mults", tuple(int(m) for m in self.mults))
        if not self.mults:
            raise ValueError("a ramification type needs at least one branch point")
        for m in self.mults:
            if not 0 < m < self.n:
                raise ValueError(f"multiplicity {m} not in (0, {self.n})")
        if gcd(self.n, *self.mults) != 1:
            raise ValueError(f"type ({self.n}; {list(self.mults)}) is disconnected")
        if sum(self.mults) % self.n:
            raise ValueError(f"multiplicities {list(self.mults)} do not sum to 0 mod {self.n}")

    @property
    def r(self) -> int:
        return len(self.mults)

    def __str__(self):
        return f"({self.n};{','.join(map(str, self.mults))})"


def complete_type(n: int, mults, allow_infinity: bool = True) -> RamificationType:
    """Append the forced multiplicity at infinity when sum(mults) is not 0 mod n."""
    mults = [int(m) for m in mults]
    rest = -sum(mults) % n
    if rest:
        if not allow_infinity:
            raise ValueError(f"multiplicities {mults} do not sum to 0 mod {n}")
        mults.append(rest)
    return RamificationType(n, tuple(mults))


def canonicalize_type(n: int, mults, allow_infinity: bool = False) -> RamificationType:
    """Lexicographically least sorted(u * mults mod n) over units u mod n."""
    base = complete_type(n, mults, allow_infinity)
    best = None
    for u in range(1, n):
        if gcd(u, n) != 1:
            continue
        cand = tuple(sorted(u * m % n for m in base.mults))
        if best is None or cand < best:
            best = cand
    return RamificationType(n, best)


def type_genus(rtype: RamificationType) -> int:
    # Riemann-Hurwitz: 2g - 2 = -2n + sum_j (n - gcd(n, n_j)).
    n = rtype.n
    twice = 2 + n * (rtype.r - 2) - sum(gcd(n, m) for m in rtype.mults)
    assert twice % 2 == 0
    return twice // 2


def type_eigen_dims(rtype: RamificationType) -> list[int]:
    n = rtype.n
    return [sum(i * m % n for m in rtype.mults) // n - 1 for i in range(1, n)]


@dataclass(frozen=True)
class CurveInstance:
    """A cover with all branch points finite and n | deg f."""

    ctx: FieldCtx
    rtype: RamificationType
    branch_points: tuple

    def __post_init__(self):
        pts = tuple(self.ctx(a) for a in self.branch_points)
        object.__setattr__(self, "branch_points", pts)
        if len(pts) != self.rtype.r:
            raise ValueError("branch points and multiplicities differ in length")
        if len(set(pts)) != len(pts):
            raise ValueError("branch points are not distinct")
        if gcd(self.rtype.n, self.ctx.p) != 1:
            raise ValueError(f"cover order {self.rtype.n} is not prime to p={self.ctx.p}")

    @property
    def n(self) -> int:
        return self.rtype.n

    @property
    def p(self) -> int:
        return self.ctx.p

    @property
    def mults(self) -> tuple:
        return self.rtype.mults

    @property
    def N(self) -> int:
        return sum(self.rtype.mults)

    @cached_property
    def f(self) -> Poly:
        return Poly.from_roots(self.ctx, self.branch_points, self.rtype.mults)

    def encode(self) -> str:
        return encode_instance(self.ctx, self.n, self.mults, self.branch_points)

    def base_change(self, big: FieldCtx) -> "CurveInstance":
        emb = embedding(self.ctx, big)
        return CurveInstance(big, self.rtype, tuple(emb(a) for a in self.branch_points))


@dataclass(frozen=True)
class EigenData:
    i: int
    d_i: int
    sigma_i: int
    eps_i: int
    h_min_i: Poly
    j_max_i: int

    def basis(self):
        """(x-exponent shift, h_min) pairs describing x^(j-1) h_min dx / y^i."""
        return [(j - 1, self.h_min_i) for j in range(1, self.d_i + 1)]


def genus(c: CurveInstance) -> int:
    g = type_genus(c.rtype)
    assert g == sum(eigen_dims(c)), "genus disagrees with the eigenspace dimensions"
    return g


def eigen_dims(c) -> list[int]:
    rtype = c.rtype if isinstance(c, CurveInstance) else c
    return type_eigen_dims(rtype)


def sigma_eps(c, i: int, p: int = None) -> tuple[int, int]:
    """sigma(i) in [1, n-1] with p*sigma = i mod n; eps(i) in [0, p-1] with n*eps = -i mod p."""
    if isinstance(c, CurveInstance):
        n, p = c.n, c.p
    else:
        n = c.n
    if not 1 <= i <= n - 1:
        raise ValueError(f"eigenindex {i} outside [1, {n - 1}]")
    sigma = i * pow(p, -1, n) % n
    eps = -i * pow(n, -1, p) % p
    assert p * sigma - n * eps == i
    return sigma, eps


def is_regular(c: CurveInstance, i: int, exponents: dict) -> bool:
    """Regularity of prod (x-alpha)^{j_alpha} dx / y^i.

    exponents maps points alpha (FieldElem) to j_alpha; missing points mean 0.
    """
    n = c.n
    order = dict(zip(c.branch_points, c.mults))
    for alpha in set(exponents) | set(order):
        if (exponents.get(alpha, 0) + 1) * n <= i * order.get(alpha, 0):
            return False
    return (sum(exponents.values()) + 1) * n < i * c.N


def eigen_data(c: CurveInstance, i: int) -> EigenData:
    n = c.n
    sigma, eps = sigma_eps(c, i)
    floors = [i * m // n for m in c.mults]
    h_min = Poly.from_roots(c.ctx, c.branch_points, floors)
    j_max = -(-i * c.N // n) - 2
    d = sum(i * m % n for m in c.mults) // n - 1
    assert d == j_max - sum(floors) + 1
    zero = c.ctx.zero
    for j in range(1, d + 1):
        exps = dict(zip(c.branch_points, floors))
        exps[zero] = exps.get(zero, 0) + j - 1
        assert is_regular(c, i, exps), f"basis form {j} of D_{i} is not regular"
    return EigenData(i, d, sigma, eps, h_min, j_max)


def normalize_infinity(ctx: FieldCtx, n: int, mults, points) -> CurveInstance:
    """Build a CurveInstance with all branch points finite and n | N.

    ``points`` may contain INF once.  If infinity is branched (explicitly, or
    implicitly because sum(mults) is not 0 mod n) the substitution
    x -> c + 1/x is applied for the first non-branch c in element order,
    extending the field when every element is a branch point.  The constant
    prod (c - alpha)^{n_alpha} produced by the move is dropped; this is a twist,
    isomorphic over the algebraic closure, so genus and a-number are unchanged.
    """
    mults = [int(m) for m in mults]
    points = list(points)
    if len(points) != len(mults):
        raise ValueError("branch points and multiplicities differ in length")
    if sum(1 for a in points if a == INF) > 1:
        raise ValueError("infinity listed more than once")
    finite = [(ctx(a), m) for a, m in zip(points, mults) if a != INF]
    if len({a for a, _ in finite}) != len(finite):
        raise ValueError("duplicate branch points")
    inf_mult = [m for a, m in zip(points, mults) if a == INF]
    rest = -sum(m for _, m in finite) % n
    if inf_mult:
        if inf_mult[0] != rest:
            raise ValueError(f"multiplicity {inf_mult[0]} at infinity does not balance the type (needs {rest})")
    elif rest:
        inf_mult = [rest]
    if not inf_mult:
        rtype = RamificationType(n, tuple(m for _, m in finite))
        return CurveInstance(ctx, rtype, tuple(a for a, _ in finite))

    branch = {a for a, _ in finite}
    big = ctx
    spare = _first_spare(ctx, branch)
    if spare is None:
        for e in range(2, MAX_EXTENSION_FACTOR + 1):
            cand = make_field(ctx.p, ctx.k * e)
            emb = embedding(ctx, cand)
            emb_branch = {emb(a) for a in branch}
            spare = _first_spare(cand, emb_branch)
            if spare is not None:
                big = cand
                finite = [(emb(a), m) for a, m in finite]
                break
        else:
            raise FieldTooSmall(f"no spare point for the Moebius move over extensions of {ctx}")
    new_pts = [(a - spare).inv() for a, _ in finite] + [big.zero]
    new_mults = [m for _, m in finite] + inf_mult
    rtype = RamificationType(n, tuple(new_mults))
    return CurveInstance(big, rtype, tuple(new_pts))


def _first_spare(ctx, branch):
    for z in ctx.elements():
        if z not in branch:
            return z
    return None


# Instance text format: "p^k:modulus|n|n_1,...,n_r|alpha_1;...;alpha_r"

def encode_instance(ctx: FieldCtx, n: int, mults, points) -> str:
    pts = ";".join(a if a == INF else a.encode() for a in points)
    return f"{ctx.encode()}|{n}|{','.join(map(str, mults))}|{pts}"


def parse_instance(text: str):
    """Parse to (ctx, n, mults, points); points may include INF."""
    fields = text.strip().split("|")
    if len(fields) != 4:
        raise ValueError(f"instance {text!r} needs 4 '|'-separated fields, got {len(fields)}")
    ctx = FieldCtx.parse(fields[0])
    try:
        n = int(fields[1])
    except ValueError:
        raise ValueError(f"bad cover order token {fields[1]!r}") from None
    try:
        mults = [int(m) for m in fields[2].split(",")]
    except ValueError:
        raise ValueError(f"bad multiplicity list {fields[2]!r}") from None
    points = []
    for tok in fields[3].split(";"):
        tok = tok.strip()
        points.append(INF if tok == INF else FieldElem.parse(ctx, tok))
    return ctx, n, mults, points


def instance_from_text(text: str) -> CurveInstance:
    ctx, n, mults, points = parse_instance(text)
    return normalize_infinity(ctx, n, mults, points)


def field_for(p: int, r: int) -> FieldCtx:
    """Smallest F_{p^k} with p^k >= r + 2."""
    k = 1
    while p ** k < r + 2:
        k += 1
    return make_field(p, k)


def random_instance(p: int, rtype: RamificationType, rng, ctx: FieldCtx = None) -> CurveInstance:
    """Distinct uniform branch points drawn with a numpy Generator."""
    ctx = ctx or field_for(p, rtype.r)
    if ctx.q < rtype.r:
        raise FieldTooSmall(f"{ctx} has fewer than {rtype.r} points")
    idx = rng.choice(ctx.q, size=rtype.r, replace=False)
    return CurveInstance(ctx, rtype, tuple(ctx.from_index(int(v)) for v in idx))
