"""Small number-theory toolkit for odd moduli n = 2p + 1.

Everything here is a pure function of integers; moduli are expected to stay
in the low thousands, so factorization is plain trial division.
"""

from __future__ import annotations

import cmath
import math
from functools import lru_cache


def _check_odd_modulus(n: int, minimum: int = 3) -> None:
    if n < minimum or n % 2 == 0:
        raise ValueError(f"modulus must be an odd integer >= {minimum}, got {n}")


def jacobi(j: int, n: int) -> int:
    """Jacobi symbol (j | n) for odd positive n.

    Uses the usual reciprocity reduction. ``jacobi(j, 1) == 1`` for every j.
    """
    if n < 1 or n % 2 == 0:
        raise ValueError(f"Jacobi symbol needs an odd positive modulus, got {n}")
    j %= n
    result = 1
    while j:
        while j % 2 == 0:
            j //= 2
            if n % 8 in (3, 5):
                result = -result
        j, n = n, j
        if j % 4 == 3 and n % 4 == 3:
            result = -result
        j %= n
    return result if n == 1 else 0


def g_reduce(a: int, n: int) -> int:
    """Absolute value of the balanced residue of ``a`` modulo ``n``."""
    a %= n
    return min(a, n - a)


@lru_cache(maxsize=None)
def half_unit_group(n: int) -> tuple[int, ...]:
    """Representatives 1 <= a <= (n-1)/2 of (Z/n)^x / {+1, -1}."""
    _check_odd_modulus(n)
    return tuple(a for a in range(1, (n - 1) // 2 + 1) if math.gcd(a, n) == 1)


def half_unit_mul(a: int, b: int, n: int) -> int:
    """Group law on :func:`half_unit_group`."""
    return g_reduce(a * b, n)


def square_orbit(r: int, n: int) -> frozenset[int]:
    """The coset {g(r z^2) : z in the half-unit group}."""
    _check_odd_modulus(n)
    if math.gcd(r, n) != 1:
        raise ValueError(f"r={r} is not coprime to n={n}")
    return frozenset(g_reduce(r * z * z, n) for z in half_unit_group(n))


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division, as {prime: exponent}."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    factors: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def has_sqrt_minus_one(n: int) -> bool:
    return any((b * b + 1) % n == 0 for b in range(1, n))


def count_classes(n: int) -> int:
    """Number of inequivalent (r, kappa) classes for modulus n = 2p + 1.

    ``2**(l+1)`` if -1 is a square mod n, else ``2**l``, with l the number
    of distinct primes dividing n.
    """
    _check_odd_modulus(n)
    num_primes = len(factorize(n))
    return 2 ** (num_primes + 1) if has_sqrt_minus_one(n) else 2**num_primes


def count_classes_by_orbits(n: int) -> int:
    """Same count as :func:`count_classes`, via 2 |G| / |O_1|."""
    return 2 * len(half_unit_group(n)) // len(square_orbit(1, n))


def quadratic_gauss_sum(r: int, n: int) -> complex:
    """Sum over l = 0..n-1 of exp(-2 pi i r l^2 / n)."""
    _check_odd_modulus(n)
    if math.gcd(r, n) != 1:
        raise ValueError(f"r={r} is not coprime to n={n}")
    # l^2 reduced mod n first keeps the phases small and accurate
    return sum(cmath.exp(-2j * math.pi * ((r * l * l) % n) / n) for l in range(n))


def gauss_sum_closed_form(r: int, n: int) -> complex:
    """eps_n sqrt(n) (-r | n), eps_n = 1 for n = 1 mod 4 and i for n = 3 mod 4."""
    eps = 1 if n % 4 == 1 else 1j
    return eps * math.sqrt(n) * jacobi(-r, n)


def eisenstein_jacobi(q: int, n: int) -> float:
    """Eisenstein's sine product, which equals (q | n)."""
    _check_odd_modulus(n)
    if math.gcd(q, n) != 1:
        raise ValueError(f"q={q} is not coprime to n={n}")
    prod = 1.0
    for m in range(1, (n - 1) // 2 + 1):
        prod *= math.sin(2 * math.pi * ((q * m) % n) / n) / math.sin(2 * math.pi * m / n)
    return prod


def s_p(p: int) -> int:
    """-(-1)^(p(p+1)/2), which coincides with -(2 | 2p+1)."""
    if p < 1:
        raise ValueError(f"p must be positive, got {p}")
    value = -((-1) ** (p * (p + 1) // 2))
    assert value == -jacobi(2, 2 * p + 1)
    return value
