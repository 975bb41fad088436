"""Exact arithmetic: small finite fields GF(q), Gaussian binomials, and basis counts.

Field elements are plain ints in [0, q) encoding polynomials base p
(index = sum of coefficient_i * p^i), so 0 is the additive and 1 the
multiplicative identity.  Everything downstream of this module is exact:
arbitrary-precision ints and fractions, never floats.
"""

from __future__ import annotations

import math
from functools import lru_cache

from .errors import DomainError

#: Desk-scale guard on the field size; override via field(q, max_q=...).
MAX_Q = 16

# Monic irreducible modulus for each shipped extension field, as a
# little-endian coefficient list over GF(p) (constant term first).
_MODULI = {
    4: (1, 1, 1),         # x^2 + x + 1 over GF(2)
    8: (1, 1, 0, 1),      # x^3 + x + 1 over GF(2)
    9: (1, 0, 1),         # x^2 + 1 over GF(3)
    16: (1, 1, 0, 0, 1),  # x^4 + x + 1 over GF(2)
}


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    for d in range(2, int(math.isqrt(m)) + 1):
        if m % d == 0:
            return False
    return True


def factor_prime_power(q: int) -> tuple[int, int]:
    """Return (p, e) with q = p^e, p prime; DomainError if q is not a prime power."""
    if q < 2:
        raise DomainError(f"q must be >= 2, got {q}")
    for p in range(2, q + 1):
        if q % p == 0:
            e = 0
            m = q
            while m % p == 0:
                m //= p
                e += 1
            if m != 1 or not is_prime(p):
                raise DomainError(f"q = {q} is not a prime power")
            return p, e
    raise DomainError(f"q = {q} is not a prime power")


def _poly_mul_mod(a: tuple[int, ...], b: tuple[int, ...], modulus: tuple[int, ...], p: int) -> tuple[int, ...]:
    """Multiply two little-endian polynomials over GF(p) and reduce mod modulus."""
    e = len(modulus) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    # reduce: modulus is monic of degree e
    for i in range(len(prod) - 1, e - 1, -1):
        c = prod[i]
        if c:
            prod[i] = 0
            for j in range(e):
                prod[i - e + j] = (prod[i - e + j] - c * modulus[j]) % p
    return tuple(prod[:e])


def _poly_divmod(num: tuple[int, ...], den: tuple[int, ...], p: int) -> tuple[int, ...]:
    """Remainder of polynomial division over GF(p); den need not be monic."""
    num = list(num)
    dd = len(den) - 1
    while len(den) > 1 and den[-1] == 0:
        den = den[:-1]
        dd -= 1
    inv_lead = pow(den[-1], p - 2, p)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            f = (c * inv_lead) % p
            for j in range(dd + 1):
                num[i - dd + j] = (num[i - dd + j] - f * den[j]) % p
    return tuple(num[:dd])


def _is_irreducible(modulus: tuple[int, ...], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..e//2 over GF(p)."""
    e = len(modulus) - 1
    for d in range(1, e // 2 + 1):
        for idx in range(p ** d):
            coeffs = []
            m = idx
            for _ in range(d):
                coeffs.append(m % p)
                m //= p
            div = tuple(coeffs) + (1,)
            rem = _poly_divmod(modulus, div, p)
            if not any(rem):
                return False
    return True


class FieldSpec:
    """GF(q) with full add/mul tables; elements are ints in [0, q)."""

    def __init__(self, q: int, max_q: int = MAX_Q):
        if q > max_q:
            raise DomainError(f"q = {q} exceeds the configured cap {max_q}")
        p, e = factor_prime_power(q)
        self.q = q
        self.p = p
        self.e = e
        if e == 1:
            self.modulus = None
            self._add = [[(a + b) % p for b in range(q)] for a in range(q)]
            self._mul = [[(a * b) % p for b in range(q)] for a in range(q)]
        else:
            if q not in _MODULI:
                raise DomainError(f"no modulus shipped for q = {q}")
            modulus = _MODULI[q]
            if not _is_irreducible(modulus, p):
                raise AssertionError(f"shipped modulus for q={q} is reducible")
            self.modulus = modulus
            polys = [self._index_to_poly(i) for i in range(q)]
            self._add = [
                [self._poly_to_index(tuple((x + y) % p for x, y in zip(polys[a], polys[b])))
                 for b in range(q)]
                for a in range(q)
            ]
            self._mul = [
                [self._poly_to_index(_poly_mul_mod(polys[a], polys[b], modulus, p))
                 for b in range(q)]
                for a in range(q)
            ]
        self._neg = [next(b for b in range(q) if self._add[a][b] == 0) for a in range(q)]
        self._inv = [0] + [next(b for b in range(q) if self._mul[a][b] == 1) for a in range(1, q)]

    def _index_to_poly(self, i: int) -> tuple[int, ...]:
        digs = []
        for _ in range(self.e):
            digs.append(i % self.p)
            i //= self.p
        return tuple(digs)

    def _poly_to_index(self, poly: tuple[int, ...]) -> int:
        i = 0
        for c in reversed(poly):
            i = i * self.p + c
        return i

    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def sub(self, a: int, b: int) -> int:
        return self._add[a][self._neg[b]]

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def neg(self, a: int) -> int:
        return self._neg[a]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DomainError("0 has no multiplicative inverse")
        return self._inv[a]

    def __repr__(self):
        return f"FieldSpec(q={self.q})"


@lru_cache(maxsize=None)
def field(q: int, max_q: int = MAX_Q) -> FieldSpec:
    """Cached GF(q) instance."""
    return FieldSpec(q, max_q=max_q)


# ---------------------------------------------------------------------------
# vectors and matrices over GF(q)

def vec_add(fs: FieldSpec, u: tuple[int, ...], v: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(fs.add(a, b) for a, b in zip(u, v))

def vec_scale(fs: FieldSpec, c: int, u: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(fs.mul(c, a) for a in u)


def rref(fs: FieldSpec, rows) -> tuple[tuple[int, ...], ...]:
    """Canonical reduced row echelon form; zero rows dropped, pivots scaled to 1."""
    work = [list(r) for r in rows]
    if not work:
        return ()
    ncols = len(work[0])
    pivot_row = 0
    for col in range(ncols):
        sel = None
        for r in range(pivot_row, len(work)):
            if work[r][col] != 0:
                sel = r
                break
        if sel is None:
            continue
        work[pivot_row], work[sel] = work[sel], work[pivot_row]
        inv = fs.inv(work[pivot_row][col])
        work[pivot_row] = [fs.mul(inv, x) for x in work[pivot_row]]
        for r in range(len(work)):
            if r != pivot_row and work[r][col] != 0:
                c = work[r][col]
                work[r] = [fs.sub(x, fs.mul(c, y)) for x, y in zip(work[r], work[pivot_row])]
        pivot_row += 1
        if pivot_row == len(work):
            break
    return tuple(tuple(r) for r in work[:pivot_row])


def rank(fs: FieldSpec, rows) -> int:
    return len(rref(fs, rows))


# ---------------------------------------------------------------------------
# counting quantities

def gauss_binom(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of GF(q)^n, as an exact integer."""
    if q < 2:
        raise DomainError(f"q must be >= 2, got {q}")
    if k < 0 or k > n:
        raise DomainError(f"k = {k} outside [0, {n}]")
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (k - i) - 1
    assert num % den == 0
    return num // den


def alpha(q: int, n: int) -> int:
    """Number of unordered bases of GF(q)^n: (q^n-1)(q^n-q)...(q^n-q^(n-1)) / n!."""
    if q < 2 or n < 1:
        raise DomainError(f"need q >= 2 and n >= 1, got q={q}, n={n}")
    prod = 1
    for i in range(n):
        prod *= q ** n - q ** i
    fact = math.factorial(n)
    assert prod % fact == 0
    return prod // fact


def covering_multiplicity(q: int, n: int, i: int) -> int:
    """Number of basis-spanned Boolean sublattices of GF(q)^n containing a fixed
    i-dimensional subspace: count bases of the subspace times extensions, unordered."""
    if q < 2 or n < 1:
        raise DomainError(f"need q >= 2 and n >= 1, got q={q}, n={n}")
    if not 0 <= i <= n:
        raise DomainError(f"i = {i} outside [0, {n}]")
    num = 1
    for j in range(i):
        num *= q ** i - q ** j
    for j in range(i, n):
        num *= q ** n - q ** j
    den = math.factorial(i) * math.factorial(n - i)
    assert num % den == 0
    return num // den


def sigma_sets(n: int, k: int) -> int:
    """Sum of the k largest binomial coefficients of order n."""
    if not 1 <= k <= n + 1:
        raise DomainError(f"k = {k} outside [1, {n + 1}]")
    base = (n - k) // 2
    return sum(math.comb(n, base + i) for i in range(1, k + 1))


def sigma_spaces(n: int, k: int, q: int) -> int:
    """Sum of the k largest Gaussian binomial coefficients of order n."""
    if not 1 <= k <= n + 1:
        raise DomainError(f"k = {k} outside [1, {n + 1}]")
    base = (n - k) // 2
    return sum(gauss_binom(n, base + i, q) for i in range(1, k + 1))


def iroot(x: int, m: int) -> int:
    """Largest integer r with r**m <= x (exact, no floating point at the boundary)."""
    if x < 0 or m < 1:
        raise DomainError(f"need x >= 0 and m >= 1, got x={x}, m={m}")
    if x in (0, 1) or m == 1:
        return x
    r = int(round(x ** (1.0 / m)))
    while r > 0 and r ** m > x:
        r -= 1
    while (r + 1) ** m <= x:
        r += 1
    return r
