"""Tiny prime-power helpers shared across modules."""

from __future__ import annotations

from .abgroup import _factorint


def prime_power_parts(n: int) -> tuple[int, int]:
    """(p, e) with n = p^e; raises ValueError if n is not a prime power."""
    if n < 2:
        raise ValueError(f"{n} is not a prime power")
    factors = _factorint(n)
    if len(factors) != 1:
        raise ValueError(f"{n} is not a prime power")
    [(p, e)] = factors.items()
    return p, e


def is_prime_power(n: int) -> bool:
    return n >= 2 and len(_factorint(n)) == 1
