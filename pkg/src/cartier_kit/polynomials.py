"""Dense univariate polynomials over a FieldCtx."""

from __future__ import annotations

from .fields import FieldCtx, FieldElem

# Degree of the zero polynomial.  Compares below every integer and absorbs
# addition, so it cannot silently masquerade as -1 in index arithmetic.
NEG_INF = float("-inf")


def _reduce_t(row, modulus, p, k):
    row = [v % p for v in row]
    for top in range(len(row) - 1, k - 1, -1):
        c = row[top]
        if c:
            base = top - k
            for s in range(k):
                row[base + s] = (row[base + s] - c * modulus[s]) % p
    return tuple(row[:k])


class Poly:
    """Polynomial with coefficients constant term first and no trailing zeros."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldCtx, coeffs=()):
        self.ctx = ctx
        cs = [c if isinstance(c, FieldElem) else ctx(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def _raw(cls, ctx, coeffs):
        obj = cls.__new__(cls)
        obj.ctx = ctx
        cs = list(coeffs)
        while cs and not cs[-1]:
            cs.pop()
        obj.coeffs = tuple(cs)
        return obj

    @classmethod
    def zero(cls, ctx):
        return cls._raw(ctx, ())

    @classmethod
    def const(cls, ctx, c):
        return cls(ctx, [c])

    @classmethod
    def x(cls, ctx):
        return cls(ctx, [0, 1])

    @classmethod
    def monomial(cls, ctx, e: int, c=1):
        return cls(ctx, [0] * e + [c])

    @classmethod
    def from_roots(cls, ctx, roots, mults=None):
        """prod (x - alpha)^m over the given roots."""
        result = cls.const(ctx, 1)
        if mults is None:
            mults = [1] * len(roots)
        for alpha, m in zip(roots, mults):
            if m:
                result = result * cls(ctx, [-ctx(alpha), 1]) ** m
        return result

    # basic queries

    @property
    def deg(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def __bool__(self):
        return bool(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i: int) -> FieldElem:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.ctx.zero

    def lead(self) -> FieldElem:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ctx == other.ctx and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for e, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if e == 0 else ("x" if e == 1 else f"x^{e}")
            cs = repr(c)
            if self.ctx.k > 1 and " + " in cs:
                cs = f"({cs})"
            if not mono:
                terms.append(cs)
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{cs}*{mono}")
        return " + ".join(reversed(terms))

    def __call__(self, a) -> FieldElem:
        acc = self.ctx.zero
        for c in reversed(self.coeffs):
            acc = acc * a + c
        return acc

    # ring operations

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ctx != self.ctx:
                raise ValueError("mixed field contexts")
            return other
        if isinstance(other, (int, FieldElem)):
            return Poly(self.ctx, [other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly._raw(self.ctx, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.ctx, [-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, FieldElem)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly.zero(self.ctx)
        ctx = self.ctx
        if ctx.k == 1:
            p = ctx.p
            ai = [c.coeffs[0] for c in a]
            bi = [c.coeffs[0] for c in b]
            out = [0] * (len(a) + len(b) - 1)
            for i, x in enumerate(ai):
                if x:
                    for j, y in enumerate(bi):
                        out[i + j] += x * y
            return Poly._raw(ctx, [FieldElem(ctx, (v % p,)) for v in out])
        # Multiply as polynomials in (x, t) over the integers, reduce once at the end.
        k, p = ctx.k, ctx.p
        width = 2 * k - 1
        acc = [[0] * width for _ in range(len(a) + len(b) - 1)]
        bc = [(j, y.coeffs) for j, y in enumerate(b) if y]
        for i, x in enumerate(a):
            if not x:
                continue
            xc = x.coeffs
            for j, yc in bc:
                row = acc[i + j]
                for u, xu in enumerate(xc):
                    if xu:
                        for v, yv in enumerate(yc):
                            row[u + v] += xu * yv
        out = []
        for row in acc:
            red = _reduce_t(row, ctx.modulus, p, k)
            out.append(FieldElem(ctx, red))
        return Poly._raw(ctx, out)

    __rmul__ = __mul__

    def scale(self, c) -> "Poly":
        c = self.ctx(c)
        return Poly._raw(self.ctx, [c * a for a in self.coeffs])

    def shift(self, e: int) -> "Poly":
        """Multiply by x^e."""
        if not self.coeffs:
            return self
        return Poly._raw(self.ctx, (self.ctx.zero,) * e + self.coeffs)

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative polynomial power")
        result = Poly.const(self.ctx, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other):
        other = self._coerce(other)
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        ctx = self.ctx
        rem = list(self.coeffs)
        db = len(other.coeffs) - 1
        inv_lead = other.coeffs[-1].inv()
        if len(rem) <= db:
            return Poly.zero(ctx), Poly._raw(ctx, rem)
        quot = [ctx.zero] * (len(rem) - db)
        for top in range(len(rem) - 1, db - 1, -1):
            c = rem[top]
            if not c:
                continue
            c = c * inv_lead
            quot[top - db] = c
            for t, bcoef in enumerate(other.coeffs):
                rem[top - db + t] = rem[top - db + t] - c * bcoef
        return Poly._raw(ctx, quot), Poly._raw(ctx, rem[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "Poly":
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError(f"{other!r} does not divide {self!r}")
        return q

    def monic(self) -> "Poly":
        if not self.coeffs:
            raise ValueError("zero polynomial cannot be made monic")
        return self.scale(self.coeffs[-1].inv())

    def derivative(self) -> "Poly":
        return Poly._raw(self.ctx, [c * e for e, c in enumerate(self.coeffs)][1:])

    # text encoding: FieldElem encodings separated by ';', constant term first
    # (';' because the element encoding itself uses ',').

    def encode(self) -> str:
        if self.ctx.k == 1:
            return ",".join(c.encode() for c in self.coeffs)
        return ";".join(c.encode() for c in self.coeffs)

    @staticmethod
    def parse(ctx: FieldCtx, text: str) -> "Poly":
        text = text.strip()
        if not text:
            return Poly.zero(ctx)
        parts = text.split(",") if ctx.k == 1 else text.split(";")
        poly = Poly(ctx, [FieldElem.parse(ctx, s) for s in parts])
        if len(poly.coeffs) != len(parts):
            raise ValueError(f"polynomial {text!r} has trailing zero coefficients")
        return poly


def gcd_monic(a: Poly, b: Poly) -> Poly:
    if not a and not b:
        raise ValueError("gcd of two zero polynomials is undefined")
    while b:
        a, b = b, a % b
    return a.monic()


def vanishing_order(h: Poly, alpha) -> int:
    """Largest e such that (x - alpha)^e divides h."""
    if not h:
        raise ValueError("vanishing order of the zero polynomial is infinite")
    alpha = h.ctx(alpha)
    coeffs = list(h.coeffs)
    e = 0
    while True:
        # synthetic division by (x - alpha)
        quot = [None] * (len(coeffs) - 1)
        acc = h.ctx.zero
        for idx in range(len(coeffs) - 1, 0, -1):
            acc = acc * alpha + coeffs[idx]
            quot[idx - 1] = acc
        if acc * alpha + coeffs[0]:
            return e
        coeffs, e = quot, e + 1


def frobenius_decompose(h: Poly) -> list[Poly]:
    """Components (f_0, ..., f_{p-1}) with h = sum_t f_t(x)^p x^t."""
    ctx = h.ctx
    p = ctx.p
    parts = []
    for t in range(p):
        parts.append(Poly._raw(ctx, [c.pth_root() for c in h.coeffs[t::p]]))
    return parts


def classical_cartier_rational(G: Poly) -> Poly:
    """H with C(G dx) = H dx on k(x): H = sum_i a_{p i + p - 1}^{1/p} x^i."""
    ctx = G.ctx
    p = ctx.p
    out = []
    idx = p - 1
    while idx < len(G.coeffs):
        out.append(G.coeffs[idx].pth_root())
        idx += p
    return Poly._raw(ctx, out)
