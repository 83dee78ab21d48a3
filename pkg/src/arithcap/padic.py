"""p-adic valuations of integers, factorials and multinomial coefficients."""

from __future__ import annotations

from typing import Sequence

from .errors import PartsMismatch, ZeroInput


def vp_integer(n: int, p: int) -> int:
    """Exact p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ZeroInput("v_p(0) is infinite")
    if p < 2:
        raise ValueError("p must be at least 2")
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def vp_factorial(n: int, p: int) -> int:
    """Legendre's formula: v_p(n!) = sum_i floor(n / p^i)."""
    if n < 0:
        raise ValueError("negative factorial")
    v = 0
    q = p
    while q <= n:
        v += n // q
        q *= p
    return v


def vp_multinomial(n: int, parts: Sequence[int], p: int) -> int:
    """v_p of the multinomial coefficient n! / prod(parts[i]!).

    Runs entirely on Legendre valuations, never expanding the coefficient.
    """
    if any(b < 0 for b in parts):
        raise PartsMismatch("parts must be nonnegative")
    if sum(parts) != n:
        raise PartsMismatch(f"parts sum to {sum(parts)}, expected {n}")
    return vp_factorial(n, p) - sum(vp_factorial(b, p) for b in parts)


def prime_factorization(n: int) -> list[tuple[int, int]]:
    """Trial-division factorization, (prime, exponent) pairs in ascending order."""
    if n <= 0:
        raise ValueError("need a positive integer")
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out
