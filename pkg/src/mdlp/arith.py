"""Exact modular arithmetic over Python's native big integers.

Powering, inversion, gcd/lcm, integer factorization (trial division plus
Brent's cycle variant of Pollard rho), primality testing, Carmichael and
Euler totients, and multiplicative order computation. Everything here is a
pure function over immutable values.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .errors import BudgetExceeded, InvalidModulus, NotAUnit, NotInvertible

# Below this bound the fixed Miller-Rabin witness set is a proof of
# primality; above it the test is probabilistic.
_DETERMINISTIC_BOUND = 1 << 64
_WITNESSES_64 = (2, 325, 9375, 28178, 450775, 9780504, 1795265022)

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

DEFAULT_TRIAL_BOUND = 1 << 16
DEFAULT_RHO_BUDGET = 2_000_000


def is_probable_prime(n: int, rounds: int = 40) -> bool:
    """Miller-Rabin primality test.

    Deterministic below 2**64; above that, ``rounds`` random bases seeded
    by n itself, so repeated calls agree.
    """
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1

    def witness(a: int) -> bool:
        # True if a proves n composite.
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            return False
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                return False
        return True

    if n < _DETERMINISTIC_BOUND:
        bases = _WITNESSES_64
    else:
        rng = random.Random(n)
        bases = [rng.randrange(2, n - 1) for _ in range(rounds)]
    return not any(witness(a % n) for a in bases if a % n not in (0, 1, n - 1))


@dataclass(frozen=True)
class Factorization:
    """Prime-power factorization, primes strictly ascending.

    ``certified`` is False when any prime factor was only probabilistically
    tested (i.e. it is at least 2**64).
    """

    factors: tuple[tuple[int, int], ...]
    certified: bool = True

    def __post_init__(self):
        primes = [p for p, _ in self.factors]
        if primes != sorted(set(primes)):
            raise ValueError("primes must be strictly increasing")
        if any(a < 1 for _, a in self.factors):
            raise ValueError("exponents must be positive")

    @property
    def n(self) -> int:
        out = 1
        for p, a in self.factors:
            out *= p**a
        return out

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def __iter__(self):
        return iter(self.factors)


def mod_pow(base: int, exp: int, modulus) -> int:
    """base**exp reduced into [0, m). ``modulus`` may be an int or a Modulus."""
    m = modulus.n if isinstance(modulus, Modulus) else modulus
    if m < 2:
        raise InvalidModulus(f"modulus must be >= 2, got {m}")
    if base < 0 or exp < 0:
        raise ValueError("base and exponent must be nonnegative")
    return pow(base, exp, m)


def mod_inv(a: int, m: int) -> int:
    """Inverse of a mod m, in [1, m). Raises NotInvertible when gcd(a, m) != 1."""
    if m < 2:
        raise InvalidModulus(f"modulus must be >= 2, got {m}")
    g = math.gcd(a, m)
    if g != 1:
        raise NotInvertible(a, m, g)
    return pow(a, -1, m)


def gcd_lcm(a: int, b: int) -> tuple[int, int]:
    """(gcd, lcm) of two positive integers; gcd * lcm == a * b."""
    if a < 1 or b < 1:
        raise ValueError(f"arguments must be positive, got ({a}, {b})")
    g = math.gcd(a, b)
    return g, a // g * b


def _brent_rho(n: int, rng: random.Random, budget: list[int]) -> int:
    """One Brent-rho attempt: a nontrivial factor of composite odd n, or n."""
    if n % 2 == 0:
        return 2
    y = rng.randrange(1, n)
    c = rng.randrange(1, n)
    m = 128
    g = r = q = 1
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            budget[0] -= min(m, r - k)
            if budget[0] < 0:
                raise BudgetExceeded(
                    f"factorization budget exhausted while splitting {n}"
                )
            g = math.gcd(q, n)
            k += m
        r *= 2
    if g == n:
        # Backtrack one step at a time.
        g = 1
        while g == 1:
            ys = (ys * ys + c) % n
            g = math.gcd(abs(x - ys), n)
    return g


def factorize(
    n: int,
    trial_bound: int = DEFAULT_TRIAL_BOUND,
    rho_budget: int = DEFAULT_RHO_BUDGET,
) -> Factorization:
    """Complete prime-power factorization, ascending primes.

    Trial division up to ``trial_bound`` first, then deterministic-seed
    Brent-rho on whatever survives. Raises BudgetExceeded when the rho
    budget runs out, so a caller holding a known factorization can supply
    it instead.
    """
    if n < 2:
        raise ValueError(f"factorize needs n >= 2, got {n}")
    counts: dict[int, int] = {}
    rest = n
    for p in (2, 3, 5):
        while rest % p == 0:
            counts[p] = counts.get(p, 0) + 1
            rest //= p
    # Wheel over 6k +- 1.
    f = 7
    skip = (4, 2, 4, 2, 4, 6, 2, 6)
    idx = 0
    while f * f <= rest and f <= trial_bound:
        while rest % f == 0:
            counts[f] = counts.get(f, 0) + 1
            rest //= f
        f += skip[idx]
        idx = (idx + 1) % len(skip)

    certified = True
    budget = [rho_budget]
    stack = [rest] if rest > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_probable_prime(m):
            counts[m] = counts.get(m, 0) + 1
            if m >= _DETERMINISTIC_BOUND:
                certified = False
            continue
        rng = random.Random(m)
        d = m
        while d == m:
            d = _brent_rho(m, rng, budget)
        stack.append(d)
        stack.append(m // d)

    fact = Factorization(tuple(sorted(counts.items())), certified)
    assert fact.n == n
    return fact


def primes_up_to(bound: int) -> list[int]:
    """All primes <= bound by a plain sieve of Eratosthenes."""
    if bound < 2:
        return []
    sieve = bytearray([1]) * (bound + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(bound) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i, flag in enumerate(sieve) if flag]


def euler_phi(factorization: Factorization) -> int:
    out = 1
    for p, a in factorization:
        out *= p ** (a - 1) * (p - 1)
    return out


def carmichael(factorization: Factorization) -> int:
    """Exponent of the unit group: lcm of the prime-power components."""
    out = 1
    for p, a in factorization:
        if p == 2:
            comp = 1 if a == 1 else 2 if a == 2 else 1 << (a - 2)
        else:
            comp = p ** (a - 1) * (p - 1)
        out = out // math.gcd(out, comp) * comp
    return out


@dataclass(frozen=True)
class Modulus:
    """A modulus n >= 2 together with its factorization and totients."""

    n: int
    factorization: Factorization
    carmichael: int
    euler: int

    @classmethod
    def from_factorization(cls, factorization: Factorization) -> "Modulus":
        n = factorization.n
        if n < 2:
            raise InvalidModulus(f"modulus must be >= 2, got {n}")
        for p, _ in factorization:
            if not is_probable_prime(p):
                raise InvalidModulus(f"listed factor {p} is not prime")
        return cls(n, factorization, carmichael(factorization), euler_phi(factorization))

    @classmethod
    def from_int(cls, n: int, **factorize_kwargs) -> "Modulus":
        if n < 2:
            raise InvalidModulus(f"modulus must be >= 2, got {n}")
        return cls.from_factorization(factorize(n, **factorize_kwargs))


def as_modulus(m) -> Modulus:
    return m if isinstance(m, Modulus) else Modulus.from_int(m)


def multiplicative_order(g: int, m) -> int:
    """Smallest r >= 1 with g**r == 1 mod m.

    Always recomputed: start from lambda(n) and strip prime factors while
    the power stays 1. Never taken on faith from a caller.
    """
    mod = as_modulus(m)
    n = mod.n
    g %= n
    gcd = math.gcd(g, n)
    if gcd != 1:
        raise NotAUnit(g, n, gcd)
    r = mod.carmichael
    for p, _ in factorize(r) if r > 1 else ():
        while r % p == 0 and pow(g, r // p, n) == 1:
            r //= p
    return r
