"""Arithmetic in GF(q), q = p^m.

Elements are integer codes in ``range(q)``.  For m > 1 the code of the
polynomial c_0 + c_1 x + ... + c_{m-1} x^{m-1} is ``sum(c_j * p**j)``.
All operations go through precomputed tables, so a :class:`FieldSpec`
is cheap to use from inner loops once built.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field

# Monic irreducible polynomials, coefficients low degree first (c_0..c_m).
# Conway polynomials where one exists for the size.
IRREDUCIBLE = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (5, 2): (2, 4, 1),
    (7, 2): (3, 6, 1),
}

MAX_PRIME = 13


class FieldError(ValueError):
    """Raised for unsupported field parameters or undefined operations."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _polymulmod(a, b, poly, p):
    m = len(poly) - 1
    prod = [0] * (2 * m - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    # poly is monic: x^m = -(c_0 + ... + c_{m-1} x^{m-1})
    for d in range(len(prod) - 1, m - 1, -1):
        c = prod[d]
        if c:
            prod[d] = 0
            for j in range(m):
                prod[d - m + j] = (prod[d - m + j] - c * poly[j]) % p
    return prod[:m]


def _digits(code, p, m):
    out = []
    for _ in range(m):
        out.append(code % p)
        code //= p
    return out


def _undigits(digits, p):
    return sum(c * p**j for j, c in enumerate(digits))


@dataclass(frozen=True)
class FieldSpec:
    """A frozen presentation of GF(p^m)."""

    p: int
    m: int
    poly: tuple[int, ...]
    alpha: int
    add_table: tuple = field(repr=False, compare=False)
    mul_table: tuple = field(repr=False, compare=False)
    neg_table: tuple = field(repr=False, compare=False)
    inv_table: tuple = field(repr=False, compare=False)

    @property
    def q(self) -> int:
        return self.p**self.m

    @property
    def elements(self) -> range:
        return range(self.q)

    def add(self, a: int, b: int) -> int:
        return self.add_table[a][b]

    def sub(self, a: int, b: int) -> int:
        return self.add_table[a][self.neg_table[b]]

    def neg(self, a: int) -> int:
        return self.neg_table[a]

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in GF(%d)" % self.q)
        return self.inv_table[a]

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        result = 1
        while e:
            if e & 1:
                result = self.mul_table[result][a]
            a = self.mul_table[a][a]
            e >>= 1
        return result

    def alpha_pow(self, e: int) -> int:
        """alpha**e, with e taken modulo q - 1."""
        return self.pow(self.alpha, e % (self.q - 1))

    def order(self, a: int) -> int:
        """Multiplicative order of a nonzero element."""
        if a == 0:
            raise FieldError("zero has no multiplicative order")
        k, x = 1, a
        while x != 1:
            x = self.mul_table[x][a]
            k += 1
        return k

    def presentation(self) -> str:
        """Header form ``q=p^m poly=c0,...,cm alpha=a``."""
        return "q=%d^%d poly=%s alpha=%d" % (
            self.p, self.m, ",".join(map(str, self.poly)), self.alpha)

    def __str__(self):
        return "GF(%d)" % self.q


def _is_irreducible(poly, p):
    m = len(poly) - 1
    if m == 1:
        return True
    # brute force: no monic factor of degree 1..m//2
    for d in range(1, m // 2 + 1):
        for code in range(p**d):
            factor = _digits(code, p, d) + [1]
            # long division of poly by factor
            rem = list(poly)
            for top in range(m, d - 1, -1):
                c = rem[top]
                if c:
                    for j in range(d + 1):
                        rem[top - d + j] = (rem[top - d + j] - c * factor[j]) % p
            if not any(rem):
                return False
    return True


@functools.lru_cache(maxsize=None)
def field_new(p: int, m: int = 1) -> FieldSpec:
    """Build GF(p^m) from the built-in polynomial table.

    The primitive element is the smallest code whose powers exhaust the
    multiplicative group.
    """
    if not is_prime(p):
        raise FieldError("%r is not prime" % (p,))
    if m < 1:
        raise FieldError("extension degree must be positive, got %r" % (m,))
    if m == 1:
        if p > MAX_PRIME:
            raise FieldError("unsupported field GF(%d)" % p)
        poly = (0, 1)
    else:
        try:
            poly = IRREDUCIBLE[(p, m)]
        except KeyError:
            raise FieldError("unsupported field GF(%d^%d)" % (p, m)) from None
    q = p**m

    if m == 1:
        add = tuple(tuple((a + b) % p for b in range(q)) for a in range(q))
        mul = tuple(tuple((a * b) % p for b in range(q)) for a in range(q))
    else:
        digits = [_digits(c, p, m) for c in range(q)]
        add = tuple(
            tuple(_undigits([(x + y) % p for x, y in zip(digits[a], digits[b])], p)
                  for b in range(q))
            for a in range(q))
        mul = tuple(
            tuple(_undigits(_polymulmod(digits[a], digits[b], poly, p), p)
                  for b in range(q))
            for a in range(q))
    neg = tuple(add[a].index(0) for a in range(q))
    inv = (0,) + tuple(mul[a].index(1) for a in range(1, q))

    alpha = None
    for a in range(1, q):
        x, k = a, 1
        while x != 1:
            x = mul[x][a]
            k += 1
        if k == q - 1:
            alpha = a
            break
    if alpha is None:  # pragma: no cover - table polynomials are irreducible
        raise FieldError("no primitive element found for GF(%d)" % q)
    return FieldSpec(p, m, tuple(poly), alpha, add, mul, neg, inv)


def supported_orders() -> list[int]:
    qs = [p for p in range(2, MAX_PRIME + 1) if is_prime(p)]
    qs += [p**m for (p, m) in IRREDUCIBLE]
    return sorted(qs)


def gf(q: int) -> FieldSpec:
    """Field by order, e.g. ``gf(4)``."""
    for p in range(2, q + 1):
        if q % p == 0:
            m, r = 0, q
            while r % p == 0:
                r //= p
                m += 1
            if r != 1:
                break
            return field_new(p, m)
    raise FieldError("%r is not a prime power" % (q,))


def parse_presentation(text: str) -> FieldSpec:
    """Inverse of :meth:`FieldSpec.presentation`; checks it matches the table."""
    parts = dict(tok.split("=", 1) for tok in text.split())
    try:
        base, exp = parts["q"].split("^")
        F = field_new(int(base), int(exp))
        poly = tuple(int(c) for c in parts["poly"].split(","))
        alpha = int(parts["alpha"])
    except (KeyError, ValueError) as exc:
        raise FieldError("malformed field presentation %r" % text) from exc
    if F.m > 1 and poly != F.poly:
        raise FieldError("field polynomial %r differs from built-in %r" % (poly, F.poly))
    if alpha != F.alpha:
        raise FieldError("primitive element %d differs from built-in %d" % (alpha, F.alpha))
    return F
