"""Finite fields F_{p^k} with dense coefficient-vector elements.

Elements of F_{p^k} are stored as tuples ``(c0, ..., c_{k-1})`` in the power
basis of a monic irreducible modulus over F_p.  Contexts are immutable and
compare by value, so they can be shared freely between workers.

Limit: the field order q = p^k must not exceed ``MAX_ORDER``; enumeration,
irreducibility search and embedding are all brute force.
"""

from __future__ import annotations

import random
from functools import cached_property

MAX_ORDER = 1 << 20
# Cap on memoized products per extension-field context.
MEMO_LIMIT = 1 << 16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# --- helpers on integer coefficient lists over F_p (constant term first) ---

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, m, p):
    """Remainder of a modulo the monic polynomial m over F_p."""
    a = list(a)
    dm = len(m) - 1
    for top in range(len(a) - 1, dm - 1, -1):
        c = a[top] % p
        if c:
            shift = top - dm
            for t in range(dm + 1):
                a[shift + t] = (a[shift + t] - c * m[t]) % p
    return _trim([x % p for x in a[:dm]])


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([x % p for x in out])


def _pgcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        inv = pow(b[-1], -1, p)
        b = [x * inv % p for x in b]
        a, b = b, _pmod(a, b, p)
    return a


def _xpow_mod(e, m, p):
    result, base = [1], [0, 1]
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), m, p)
        base = _pmod(_pmul(base, base, p), m, p)
        e >>= 1
    return result


def is_irreducible(m, p: int) -> bool:
    """Rabin-style test for a monic integer coefficient list over F_p."""
    k = len(m) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    for d in range(1, k // 2 + 1):
        h = _xpow_mod(p ** d, m, p)
        h += [0] * (2 - len(h))
        h[1] = (h[1] - 1) % p
        if len(_pgcd(m, _trim(h), p)) > 1:
            return False
    return True


class FieldCtx:
    """The field F_{p^k} = F_p[t]/(modulus)."""

    def __init__(self, p: int, k: int = 1, modulus=None):
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if k < 1:
            raise ValueError(f"extension degree must be >= 1, got {k}")
        if p ** k > MAX_ORDER:
            raise ValueError(f"field order {p}^{k} exceeds {MAX_ORDER}")
        if k == 1:
            modulus = (0, 1)
        else:
            if modulus is None:
                raise ValueError("extension fields need a modulus")
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != k + 1 or modulus[-1] != 1:
                raise ValueError(f"modulus must be monic of degree {k}")
            if not is_irreducible(list(modulus), p):
                raise ValueError(f"modulus {modulus} is reducible over F_{p}")
        self.p = p
        self.k = k
        self.q = p ** k
        self.modulus = modulus
        self._products = {}

    def __eq__(self, other):
        return (isinstance(other, FieldCtx) and self.p == other.p
                and self.k == other.k and self.modulus == other.modulus)

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __repr__(self):
        return f"FieldCtx({self.encode()})"

    def __reduce__(self):
        return (FieldCtx, (self.p, self.k, self.modulus))

    # construction of elements

    def __call__(self, value) -> "FieldElem":
        if isinstance(value, FieldElem):
            if value.ctx != self:
                raise ValueError("element belongs to a different field")
            return value
        if isinstance(value, int):
            return FieldElem(self, (value % self.p,) + (0,) * (self.k - 1))
        coeffs = [int(c) % self.p for c in value]
        if len(coeffs) > self.k:
            raise ValueError(f"too many coordinates for F_{self.p}^{self.k}")
        return FieldElem(self, tuple(coeffs) + (0,) * (self.k - len(coeffs)))

    @cached_property
    def zero(self) -> "FieldElem":
        return self(0)

    @cached_property
    def one(self) -> "FieldElem":
        return self(1)

    @cached_property
    def gen(self) -> "FieldElem":
        """The class of t (a primitive-basis generator); only for k > 1."""
        if self.k == 1:
            raise ValueError("prime fields have no power-basis generator")
        return self([0, 1])

    def from_index(self, idx: int) -> "FieldElem":
        """Element whose coordinates are the base-p digits of idx."""
        coeffs = []
        for _ in range(self.k):
            idx, c = divmod(idx, self.p)
            coeffs.append(c)
        return FieldElem(self, tuple(coeffs))

    def elements(self):
        """All q elements in a fixed order (index order)."""
        return [self.from_index(i) for i in range(self.q)]

    # text encoding: "p^k:m0,m1,...,mk"

    def encode(self) -> str:
        return f"{self.p}^{self.k}:" + ",".join(str(c) for c in self.modulus)

    @classmethod
    def parse(cls, text: str) -> "FieldCtx":
        text = text.strip()
        head, _, mod = text.partition(":")
        if "^" in head:
            p_s, k_s = head.split("^", 1)
        else:
            p_s, k_s = head, "1"
        try:
            p, k = int(p_s), int(k_s)
        except ValueError:
            raise ValueError(f"bad field token {text!r}") from None
        if not mod:
            return make_field(p, k)
        try:
            coeffs = [int(c) for c in mod.split(",")]
        except ValueError:
            raise ValueError(f"bad modulus in field token {text!r}") from None
        return cls(p, k, coeffs if k > 1 else None)


class FieldElem:
    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldCtx, coeffs: tuple):
        self.ctx = ctx
        self.coeffs = coeffs

    def _check(self, other) -> "FieldElem":
        if isinstance(other, int):
            return self.ctx(other)
        if not isinstance(other, FieldElem):
            return NotImplemented
        if other.ctx is not self.ctx and other.ctx != self.ctx:
            raise ValueError("mixed field contexts")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        p = self.ctx.p
        return FieldElem(self.ctx, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        p = self.ctx.p
        return FieldElem(self.ctx, tuple(-a % p for a in self.coeffs))

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        p = self.ctx.p
        return FieldElem(self.ctx, tuple((a - b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        ctx = self.ctx
        p = ctx.p
        if ctx.k == 1:
            return FieldElem(ctx, (self.coeffs[0] * other.coeffs[0] % p,))
        key = (self.coeffs, other.coeffs)
        memo = ctx._products
        hit = memo.get(key)
        if hit is None:
            prod = _pmul(list(self.coeffs), list(other.coeffs), p)
            red = _pmod(prod, ctx.modulus, p)
            hit = tuple(red) + (0,) * (ctx.k - len(red))
            if len(memo) < MEMO_LIMIT:
                memo[key] = hit
        return FieldElem(ctx, hit)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inv() ** (-e)
        result = self.ctx.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inv(self) -> "FieldElem":
        if not self:
            raise ZeroDivisionError("inverse of zero in a finite field")
        if self.ctx.k == 1:
            return FieldElem(self.ctx, (pow(self.coeffs[0], -1, self.ctx.p),))
        return self ** (self.ctx.q - 2)

    def __truediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self * other.inv()

    def __rtruediv__(self, other):
        return self._check(other) * self.inv()

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ctx(other)
        if not isinstance(other, FieldElem):
            return NotImplemented
        return self.coeffs == other.coeffs and self.ctx == other.ctx

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if self.ctx.k == 1:
            return str(self.coeffs[0])
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
                terms.append(str(c) if not mono else (mono if c == 1 else f"{c}*{mono}"))
        return " + ".join(terms) or "0"

    @property
    def index(self) -> int:
        return sum(c * self.ctx.p ** i for i, c in enumerate(self.coeffs))

    def frobenius(self) -> "FieldElem":
        return self ** self.ctx.p

    def pth_root(self) -> "FieldElem":
        # Frobenius has order k on F_{p^k}, so a^(p^(k-1)) is its inverse image.
        return self ** (self.ctx.p ** (self.ctx.k - 1))

    def encode(self) -> str:
        return ",".join(str(c) for c in self.coeffs)

    @staticmethod
    def parse(ctx: FieldCtx, text: str) -> "FieldElem":
        try:
            coeffs = [int(c) for c in text.strip().split(",")]
        except ValueError:
            raise ValueError(f"bad field element {text!r}") from None
        if len(coeffs) != ctx.k or any(not 0 <= c < ctx.p for c in coeffs):
            raise ValueError(f"field element {text!r} is not a canonical F_{ctx.p}^{ctx.k} vector")
        return FieldElem(ctx, tuple(coeffs))


def pth_root(a: FieldElem) -> FieldElem:
    return a.pth_root()


def make_field(p: int, k: int = 1, seed: int = 0) -> FieldCtx:
    """Field F_{p^k} with a deterministically chosen modulus.

    Monic degree-k candidates t^k + c_{k-1} t^{k-1} + ... + c_0 are scanned by
    the integer c_0 + c_1 p + ... + c_{k-1} p^{k-1}; the first irreducible one
    wins.  A nonzero seed only moves the starting point of the scan.
    """
    if not is_prime(p):
        raise ValueError(f"characteristic {p} is not prime")
    if k < 1:
        raise ValueError(f"extension degree must be >= 1, got {k}")
    if k == 1:
        return FieldCtx(p, 1)
    total = p ** k
    start = random.Random(seed).randrange(total) if seed else 0
    for step in range(total):
        idx = (start + step) % total
        low = []
        for _ in range(k):
            idx, c = divmod(idx, p)
            low.append(c)
        if is_irreducible(low + [1], p):
            return FieldCtx(p, k, low + [1])
    raise RuntimeError(f"no irreducible polynomial of degree {k} over F_{p}")


def embedding(small: FieldCtx, big: FieldCtx):
    """Return a field homomorphism small -> big as a callable.

    Requires small.p == big.p and small.k | big.k.  The image of t is the first
    root of small's modulus in big's element order.
    """
    if small.p != big.p or big.k % small.k:
        raise ValueError(f"{small} does not embed in {big}")
    if small == big:
        return lambda a: a
    if small.k == 1:
        return lambda a: big(a.coeffs[0])
    modulus = small.modulus
    theta = None
    for z in big.elements():
        acc = big.zero
        for c in reversed(modulus):
            acc = acc * z + c
        if not acc:
            theta = z
            break
    if theta is None:
        raise RuntimeError("modulus has no root in the extension")
    powers = [big.one]
    for _ in range(small.k - 1):
        powers.append(powers[-1] * theta)

    def embed(a: FieldElem) -> FieldElem:
        acc = big.zero
        for c, w in zip(a.coeffs, powers):
            if c:
                acc = acc + w * c
        return acc

    return embed
