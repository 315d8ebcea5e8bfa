"""Modular arithmetic kernel: powering, trial-division factoring, orders."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, prod

VERTEX_LIMIT = 2**32
FACTOR_CAP = 2**40


class ParameterError(ValueError):
    """Raised for parameters outside the supported domain."""


def mod_pow(base: int, exp: int, modulus: int) -> int:
    """Left-to-right binary powering. Python ints never overflow."""
    if modulus < 2:
        raise ParameterError(f"modulus must be >= 2, got {modulus}")
    if exp < 0 or base < 0:
        raise ParameterError("base and exponent must be nonnegative")
    result = 1
    base %= modulus
    for bit in bin(exp)[2:]:
        result = result * result % modulus
        if bit == "1":
            result = result * base % modulus
    return result


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    if m % 2 == 0:
        return m == 2
    d = 3
    while d * d <= m:
        if m % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class Factorization:
    value: int
    pairs: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        primes = [pr for pr, _ in self.pairs]
        if primes != sorted(set(primes)):
            raise ValueError("primes must be strictly increasing")
        if prod(pr**e for pr, e in self.pairs) != self.value:
            raise ValueError("factorization does not multiply back to value")

    @property
    def primes(self) -> list[int]:
        return [pr for pr, _ in self.pairs]


def factorize(m: int, cap: int = FACTOR_CAP) -> Factorization:
    if m < 1:
        raise ParameterError(f"cannot factor {m}")
    if m >= cap:
        raise ParameterError(f"{m} exceeds the trial-division cap {cap}")
    pairs = []
    rest = m
    d = 2
    while d * d <= rest:
        if rest % d == 0:
            e = 0
            while rest % d == 0:
                rest //= d
                e += 1
            pairs.append((d, e))
        d += 1 if d == 2 else 2
    if rest > 1:
        pairs.append((rest, 1))
    return Factorization(m, tuple(pairs))


def euler_phi_prime_power(p: int, n: int) -> int:
    if n < 1:
        raise ParameterError(f"exponent n must be >= 1, got {n}")
    return (p - 1) * p ** (n - 1)


def multiplicative_order(q: int, p: int, n: int) -> int:
    """Least t >= 1 with q**t == 1 mod p**n.

    Starts from phi(p**n) and strips each prime factor while the power
    still lands on 1.
    """
    if gcd(q, p) != 1:
        raise ParameterError(f"gcd({q}, {p}) != 1")
    modulus = p**n
    t = euler_phi_prime_power(p, n)
    for prime, mult in factorize(t).pairs:
        for _ in range(mult):
            if mod_pow(q, t // prime, modulus) == 1:
                t //= prime
            else:
                break
    return t


def is_primitive_root(q: int, p: int, n: int) -> bool:
    return multiplicative_order(q, p, n) == euler_phi_prime_power(p, n)


@dataclass(frozen=True)
class GraphParams:
    """The triple (p, n, q); q is stored reduced mod p**n."""

    p: int
    n: int
    q: int
    raw_q: int = field(default=0, compare=False, repr=False)

    def __post_init__(self):
        p, n, q = self.p, self.n, self.q
        if not all(isinstance(v, int) for v in (p, n, q)):
            raise ParameterError("p, n, q must be integers")
        if p == 2:
            raise ParameterError("p = 2 is not supported (out-degree would be 1)")
        if not is_prime(p):
            raise ParameterError(f"p = {p} is not prime")
        if n < 1:
            raise ParameterError(f"n must be >= 1, got {n}")
        if q < 1:
            raise ParameterError(f"q must be positive, got {q}")
        if gcd(q, p) != 1:
            raise ParameterError(f"q = {q} is divisible by p = {p}")
        if p**n >= VERTEX_LIMIT:
            raise ParameterError(f"p**n = {p}**{n} exceeds the vertex limit 2**32")
        object.__setattr__(self, "raw_q", q)
        object.__setattr__(self, "q", q % p**n)

    @property
    def modulus(self) -> int:
        return self.p**self.n

    @property
    def phi(self) -> int:
        return euler_phi_prime_power(self.p, self.n)

    def lower(self) -> GraphParams:
        """Same base one level down (modulus p**(n-1))."""
        if self.n < 2:
            raise ParameterError("no level below n = 1")
        return GraphParams(self.p, self.n - 1, self.raw_q)

    def as_dict(self) -> dict:
        return {"p": self.p, "n": self.n, "q": self.raw_q}
