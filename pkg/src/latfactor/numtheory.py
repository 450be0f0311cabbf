"""Arbitrary-precision integer helpers: primes, smoothness, modular arithmetic.

Everything here is pure and reentrant; integers are Python ints throughout,
so values with hundreds of digits are handled without any special casing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

# Deterministic Miller-Rabin witnesses, valid for all n < 3.3e24.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


class NonInvertibleError(ValueError):
    """Raised when mod_inv is asked for an inverse that does not exist.

    The offending gcd is kept on the exception: when the modulus is the
    integer being factored, a non-trivial gcd is itself a factor and callers
    are expected to act on it rather than treat this as a plain failure.
    """

    def __init__(self, a: int, m: int, factor: int):
        super().__init__(f"{a} is not invertible mod {m} (gcd {factor})")
        self.a = a
        self.m = m
        self.factor = factor


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3e24."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class PrimeBasis:
    """The first k primes, in increasing order starting from 2."""

    primes: tuple[int, ...]

    def __post_init__(self):
        assert all(b > a for a, b in zip(self.primes, self.primes[1:]))

    @property
    def k(self) -> int:
        return len(self.primes)

    def __iter__(self):
        return iter(self.primes)

    def __len__(self) -> int:
        return len(self.primes)

    def __getitem__(self, i: int) -> int:
        return self.primes[i]

    def index(self, p: int) -> int:
        return self.primes.index(p)


def first_primes(k: int) -> PrimeBasis:
    """Return the basis of the first k primes (k=0 gives an empty basis)."""
    if k < 0:
        raise ValueError("k must be non-negative")
    primes: list[int] = []
    x = 2
    while len(primes) < k:
        if all(x % p for p in primes if p * p <= x):
            primes.append(x)
        x += 1
    return PrimeBasis(tuple(primes))


@dataclass(frozen=True)
class Factorization:
    """Map prime -> exponent; the product of prime**exponent is the value."""

    exponents: dict[int, int]

    def value(self) -> int:
        v = 1
        for p, e in self.exponents.items():
            v *= p**e
        return v

    def __getitem__(self, p: int) -> int:
        return self.exponents.get(p, 0)

    def items(self):
        return self.exponents.items()


def smooth_factor(x: int, basis: PrimeBasis) -> Factorization | None:
    """Factor x completely over basis, or None when x is not smooth.

    x = 1 yields the empty factorization; x = 0 is a domain error.
    """
    if x <= 0:
        raise ValueError("smoothness is defined for positive integers only")
    exps: dict[int, int] = {}
    for p in basis:
        if x == 1:
            break
        while x % p == 0:
            exps[p] = exps.get(p, 0) + 1
            x //= p
    if x != 1:
        return None
    return Factorization(exps)


def gcd(a: int, b: int) -> int:
    return math.gcd(a, b)


def mod_pow(base: int, exp: int, mod: int) -> int:
    if mod < 2:
        raise ValueError("modulus must be >= 2")
    return pow(base, exp, mod)


def mod_inv(a: int, m: int) -> int:
    """Inverse of a mod m; raises NonInvertibleError carrying gcd(a, m)."""
    if m < 2:
        raise ValueError("modulus must be >= 2")
    g = math.gcd(a, m)
    if g != 1:
        raise NonInvertibleError(a, m, g)
    return pow(a, -1, m)
