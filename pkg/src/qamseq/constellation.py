"""Exact M^2-QAM and 2M-ary Q-PAM symbol handling.

A symbol is sqrt(2i) * core where core = sum_k 2^k i^(e_k) is a Gaussian
integer and sqrt(2i) means (1+i).  Since (1+i) is itself a Gaussian
integer, symbols are exact too; the sqrt(2i) factor contributes exactly
the scalar 2 to every inner product, so all correlation and energy
bookkeeping happens on cores and stays in Z[i].
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from .galois import GaussianInt, i_power

SQRT_2I = GaussianInt(1, 1)


def core_from_exponents(exps: tuple[int, ...]) -> GaussianInt:
    """core = sum_k 2^k i^(exps[k])."""
    acc = GaussianInt(0, 0)
    for k, e in enumerate(exps):
        acc = acc + i_power(e).scale(1 << k)
    return acc


def symbol_value(core: GaussianInt) -> GaussianInt:
    """The transmitted point sqrt(2i) * core = (1+i) * core."""
    return SQRT_2I * core


def qam_alphabet(m: int) -> list[GaussianInt]:
    """All 4^m cores; the map (a_0..a_{m-1}) -> core is a bijection onto
    the M^2-QAM grid (after the sqrt(2i) scale)."""
    return [core_from_exponents(e) for e in product(range(4), repeat=m)]


def qpam_alphabet(m: int) -> list[GaussianInt]:
    """The 2^(m+1) cores i^(a0) + sum_{k>=1} 2^k i^(a0 + 2 a_k)."""
    out = []
    for a0 in range(4):
        for bits in product(range(2), repeat=m - 1):
            exps = (a0,) + tuple(a0 + 2 * b for b in bits)
            out.append(core_from_exponents(exps))
    return out


def qam_membership(core: GaussianInt, M: int) -> bool:
    """True iff sqrt(2i)*core = a + ib with a, b odd in [-M+1, M-1]."""
    w = symbol_value(core)
    return (
        w.re % 2 == 1
        and w.im % 2 == 1
        and -M + 1 <= w.re <= M - 1
        and -M + 1 <= w.im <= M - 1
    )


def qpam_membership(core: GaussianInt, M: int) -> bool:
    """True iff core matches the coupled-phase Q-PAM form for size 2M."""
    m = M.bit_length() - 1
    if 1 << m != M:
        raise ValueError("M must be a power of 2")
    return core in set(qpam_alphabet(m))


def average_energy(cores: list[GaussianInt]) -> Fraction:
    """Mean squared magnitude of the scaled symbols, exact."""
    total = sum(2 * c.abs2() for c in cores)
    return Fraction(total, len(cores))
