"""Small finite fields GF(p^k) in a polynomial basis.

Elements are tuples of k coefficients (constant term first).  The modulus is
the least monic irreducible polynomial of degree k, where polynomials are
ordered by the integer ``sum c_i p^i`` of their lower coefficients.  Nothing
here is tuned for speed; the fields in use have at most a few million
elements and are only touched through short matrix computations.
"""

from __future__ import annotations

from functools import lru_cache

__all__ = ["GF", "gf", "factorize"]


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division."""
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _poly_mulmod(a, b, mod, p):
    k = len(mod) - 1
    prod = [0] * (2 * k - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    prod[i + j] = (prod[i + j] + x * y) % p
    # mod is monic: x^k = -sum mod[i] x^i
    for d in range(len(prod) - 1, k - 1, -1):
        c = prod[d]
        if c:
            prod[d] = 0
            for i in range(k):
                prod[d - k + i] = (prod[d - k + i] - c * mod[i]) % p
    return tuple(prod[:k])


def _is_irreducible(mod, p) -> bool:
    """Rabin's test: x^(p^k) = x mod f and gcd(x^(p^(k/r)) - x, f) = 1."""
    k = len(mod) - 1
    if k == 1:
        return True
    x = tuple(1 if i == 1 else 0 for i in range(k))

    def frob_iter(v, times):
        for _ in range(times):
            v = _pow_poly(v, p, mod, p)
        return v

    if frob_iter(x, k) != x:
        return False
    for r in factorize(k):
        y = frob_iter(x, k // r)
        diff = [(a - b) % p for a, b in zip(y, x)]
        if _poly_gcd_degree(diff, list(mod), p) > 0:
            return False
    return True


def _pow_poly(v, e, mod, p):
    k = len(mod) - 1
    out = tuple(1 if i == 0 else 0 for i in range(k))
    while e:
        if e & 1:
            out = _poly_mulmod(out, v, mod, p)
        v = _poly_mulmod(v, v, mod, p)
        e >>= 1
    return out


def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_gcd_degree(a, b, p) -> int:
    a, b = _trim(a), _trim(b)
    while b:
        inv = pow(b[-1], -1, p)
        while len(a) >= len(b) and a:
            c = a[-1] * inv % p
            shift = len(a) - len(b)
            for i, y in enumerate(b):
                a[shift + i] = (a[shift + i] - c * y) % p
            a = _trim(a)
        a, b = b, a
    return len(a) - 1


class GF:
    """The field with p^k elements."""

    def __init__(self, p: int, k: int = 1):
        if len(factorize(p)) != 1 or factorize(p)[p] != 1:
            raise ValueError(f"{p} is not prime")
        self.p, self.k = p, k
        self.order = p ** k
        self.modulus = self._least_irreducible()
        self.zero = (0,) * k
        self.one = (1,) + (0,) * (k - 1)
        self._gen = None

    def _least_irreducible(self):
        p, k = self.p, self.k
        for code in range(p ** k):
            low = tuple((code // p ** i) % p for i in range(k))
            if k > 1 and low[0] == 0:
                continue
            mod = low + (1,)
            if _is_irreducible(mod, p):
                return mod
        raise AssertionError("no irreducible polynomial found")

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.k})"

    # -- element helpers ----------------------------------------------------
    def __call__(self, value) -> tuple:
        if isinstance(value, int):
            return ((value % self.p),) + (0,) * (self.k - 1)
        value = tuple(int(c) % self.p for c in value)
        if len(value) != self.k:
            raise ValueError("wrong number of coefficients")
        return value

    def elements(self):
        p, k = self.p, self.k
        for code in range(self.order):
            yield tuple((code // p ** i) % p for i in range(k))

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple((-x) % p for x in a)

    def scale(self, c: int, a):
        p = self.p
        return tuple(c * x % p for x in a)

    def mul(self, a, b):
        if self.k == 1:
            return ((a[0] * b[0]) % self.p,)
        return _poly_mulmod(a, b, self.modulus, self.p)

    def pow(self, a, e: int):
        if e < 0:
            a, e = self.inv(a), -e
        if self.k == 1:
            return (pow(a[0], e, self.p),)
        return _pow_poly(a, e, self.modulus, self.p)

    def inv(self, a):
        if a == self.zero:
            raise ZeroDivisionError("inverse of zero")
        return self.pow(a, self.order - 2)

    def is_square(self, a) -> bool:
        if a == self.zero:
            raise ValueError("zero has no square class")
        if self.p == 2:
            return True
        return self.pow(a, (self.order - 1) // 2) == self.one

    def frobenius(self, a, times: int = 1):
        for _ in range(times):
            a = self.pow(a, self.p)
        return a

    def element_order(self, a) -> int:
        n = self.order - 1
        out = n
        for r, e in factorize(n).items():
            for _ in range(e):
                if self.pow(a, out // r) == self.one:
                    out //= r
                else:
                    break
        return out

    @property
    def generator(self):
        """Least primitive element."""
        if self._gen is None:
            self._gen = next(a for a in self.elements()
                             if a != self.zero and self.element_order(a) == self.order - 1)
        return self._gen

    def element_of_order(self, n: int):
        if (self.order - 1) % n:
            raise ValueError(f"no element of order {n} in {self}")
        return self.pow(self.generator, (self.order - 1) // n)


@lru_cache(maxsize=None)
def gf(p: int, k: int = 1) -> GF:
    return GF(p, k)
