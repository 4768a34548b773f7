"""Finite extension fields F_{p^k} used as evaluation domains.

Randomized rank certification in characteristic p needs a coefficient pool
much larger than F_p itself, so matrix entries are evaluated at random
elements of F_{p^k} with p^k at least 2^20.  Elements are plain ints for
p = 2 (bit-packed, carryless arithmetic) and coefficient tuples for odd p.
The defining modulus is found by a deterministic scan, so a given (p, k)
always yields the same field.
"""
from __future__ import annotations

from .errors import MalformedScalarError
from .scalars import is_prime

_MIN_SIZE = 1 << 20


def extension_degree(p: int, minimum: int = _MIN_SIZE) -> int:
    """Smallest k with p^k >= minimum."""
    k, size = 1, p
    while size < minimum:
        k += 1
        size *= p
    return k


# dense univariate helpers over F_p (lists of ints, index = degree) -----------


def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _polmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _trim(out)


def _polrem(a, b, p):
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    inv_lb = pow(lb, -1, p)
    while len(a) - 1 >= db and a:
        shift = len(a) - 1 - db
        c = a[-1] * inv_lb % p
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        _trim(a)
    return a


def _polgcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        a, b = b, _polrem(a, b, p)
    return a


def _polpow_mod(base, e, mod, p):
    result = [1]
    while e:
        if e & 1:
            result = _polrem(_polmul(result, base, p), mod, p)
        base = _polrem(_polmul(base, base, p), mod, p)
        e >>= 1
    return result


def _is_irreducible(coeffs, p):
    """Rabin's criterion for a monic polynomial over F_p."""
    k = len(coeffs) - 1
    x = [0, 1]
    # x^(p^k) == x mod f
    xp = _polpow_mod(x, p ** k, coeffs, p)
    if xp != x:
        return False
    factors = set()
    m = k
    q = 2
    while q * q <= m:
        if m % q == 0:
            factors.add(q)
            while m % q == 0:
                m //= q
        q += 1
    if m > 1:
        factors.add(m)
    for q in factors:
        xq = _polpow_mod(x, p ** (k // q), coeffs, p)
        diff = list(xq)
        while len(diff) < 2:
            diff.append(0)
        diff[1] = (diff[1] - 1) % p
        _trim(diff)
        g = _polgcd(coeffs, diff, p)
        if len(g) - 1 > 0:
            return False
    return True


def find_modulus(p: int, k: int):
    """First monic irreducible x^k + (lower terms) in the counting order of
    the lower coefficient vector read as a base-p integer."""
    if k == 1:
        return [0, 1]
    for code in range(1, p ** k):
        lower = []
        c = code
        for _ in range(k):
            lower.append(c % p)
            c //= p
        if lower[0] == 0:
            continue  # divisible by x
        cand = lower + [1]
        if _is_irreducible(cand, p):
            return cand
    raise MalformedScalarError(f"no irreducible of degree {k} over F_{p}")


class ExtField:
    """Arithmetic domain for F_{p^k}; satisfies the evaluation-domain
    protocol (zero/one/from_base/add/sub/mul/neg/inv/pow/is_zero)."""

    def __init__(self, p: int, k: int | None = None):
        if not is_prime(p):
            raise MalformedScalarError(f"{p} is not prime")
        if k is None:
            k = extension_degree(p)
        self.p = p
        self.k = k
        self.size = p ** k
        if k == 1:
            self.modulus = None
        else:
            self.modulus = find_modulus(p, k)
        if p == 2 and k > 1:
            self._mod_mask = 0
            for i, c in enumerate(self.modulus):
                if c:
                    self._mod_mask |= 1 << i

    # element constructors -------------------------------------------------

    @property
    def zero(self):
        if self.k == 1:
            return 0
        return 0 if self.p == 2 else (0,) * self.k

    @property
    def one(self):
        if self.k == 1:
            return 1
        return 1 if self.p == 2 else (1,) + (0,) * (self.k - 1)

    def from_base(self, c):
        """Embed a base-field coefficient (int mod p)."""
        c = int(c) % self.p
        if self.k == 1:
            return c
        if self.p == 2:
            return c
        return (c,) + (0,) * (self.k - 1)

    def from_index(self, idx: int):
        """Element number idx in 0..size-1 (base-p digit decoding)."""
        idx %= self.size
        if self.k == 1:
            return idx
        if self.p == 2:
            return idx
        digits = []
        for _ in range(self.k):
            digits.append(idx % self.p)
            idx //= self.p
        return tuple(digits)

    def random_element(self, rng):
        return self.from_index(rng.randrange(self.size))

    # arithmetic -----------------------------------------------------------

    def is_zero(self, a) -> bool:
        return a == self.zero

    def add(self, a, b):
        if self.k == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def sub(self, a, b):
        if self.k == 1:
            return (a - b) % self.p
        if self.p == 2:
            return a ^ b
        return tuple((x - y) % self.p for x, y in zip(a, b))

    def neg(self, a):
        if self.k == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        return tuple((-x) % self.p for x in a)

    def mul(self, a, b):
        if self.k == 1:
            return a * b % self.p
        if self.p == 2:
            acc = 0
            x = a
            while x:
                low = x & -x
                acc ^= b << low.bit_length() - 1
                x ^= low
            k = self.k
            top = acc.bit_length() - 1
            while top >= k:
                acc ^= self._mod_mask << (top - k)
                top = acc.bit_length() - 1
            return acc
        p, k, m = self.p, self.k, self.modulus
        conv = [0] * (2 * k - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    conv[i + j] += ai * bj
        for d in range(2 * k - 2, k - 1, -1):
            c = conv[d] % p
            if c:
                for i in range(k):
                    conv[d - k + i] -= c * m[i]
            conv[d] = 0
        return tuple(x % p for x in conv[:k])

    def inv(self, a):
        if self.is_zero(a):
            raise MalformedScalarError("inverse of zero in extension field")
        if self.k == 1:
            return pow(a, -1, self.p)
        return self.pow(a, self.size - 2)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        if e < 0:
            return self.pow(self.inv(a), -e)
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def __repr__(self):
        return f"ExtField({self.p}^{self.k})"
