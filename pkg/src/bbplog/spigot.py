"""Arbitrary-position binary digit extraction for degree-1, base-2**beta
formulas.

For the constant C = (p/q) * sum_k b**-k sum_j a_j/(k*l + j) with
b = 2**beta, the bits after position n are the fractional part of

    2**n * C = sum_{k,j} p*a_j * 2**(n - beta*k) / (q*(k*l + j)).

Head terms (nonnegative exponent) reduce to an exact rational with
denominator q*(k*l + j) via modular exponentiation -- the prefactor
denominator q is folded into every modulus because frac(x/q) is not a
function of frac(x), so dividing at the end would be wrong.  Tail terms
are summed directly in fixed point.  Every contribution enters a W-bit
accumulator mod 1 through a floor division, so the true value exceeds
the accumulated one by at most one ulp per term; that one-sided budget
is what certifies the returned digits.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import gcd

from .errors import UnsupportedFormulaError, ValidationError
from .formula import BbpFormula
from .numerics import modpow

__all__ = ["SpigotPlan", "DigitWindow", "build_plan", "extract_bits", "extract_hex"]

MAX_WINDOW_BITS = 64
_HEAD_CHUNK = 2048  # k-values per work unit; any partition gives identical bits


@dataclass(frozen=True, slots=True)
class DigitWindow:
    """A run of extracted digits starting after the given position."""

    position: int
    radix: int
    bits: str
    certified: int

    def __post_init__(self) -> None:
        if not self.bits:
            raise ValidationError("bits: must be nonempty")
        if not 0 <= self.certified <= len(self.bits):
            raise ValidationError("certified: out of range")


@dataclass(frozen=True, slots=True)
class SpigotPlan:
    """A formula prepared for extraction: power-of-two base, folded scales."""

    formula: BbpFormula
    beta: int
    numerator_scale: int
    denominator_scale: int
    nonzero: tuple[tuple[int, int], ...]  # (j, a_j), 1-based j


def build_plan(f: BbpFormula) -> SpigotPlan:
    """Validate and preprocess a formula for digit extraction."""
    f.validate()
    if f.degree != 1:
        raise UnsupportedFormulaError(
            f"degree {f.degree} not supported; extraction needs degree 1"
        )
    if f.base < 2 or f.base & (f.base - 1):
        raise UnsupportedFormulaError(
            f"base {f.base} not supported; extraction needs a power of two"
        )
    p = f.prefactor.numerator
    q = f.prefactor.denominator
    if gcd(p, q) != 1:
        raise ValidationError("prefactor: not in lowest terms")
    return SpigotPlan(
        formula=f,
        beta=f.base.bit_length() - 1,
        numerator_scale=p,
        denominator_scale=q,
        nonzero=tuple((j, a) for j, a in enumerate(f.coeffs, start=1) if a),
    )


def _head_chunk(
    plan: SpigotPlan, n: int, width: int, k_lo: int, k_hi: int
) -> tuple[int, int]:
    """Accumulate head terms for k in [k_lo, k_hi); returns (sum, rounded)."""
    length = plan.formula.length
    q = plan.denominator_scale
    p = plan.numerator_scale
    beta = plan.beta
    acc = 0
    rounded = 0
    for k in range(k_lo, k_hi):
        e = n - beta * k
        base_index = k * length
        for j, a in plan.nonzero:
            m = q * (base_index + j)
            r = p * a * modpow(2, e, m) % m
            contrib, rem = divmod(r << width, m)
            acc += contrib
            if rem:
                rounded += 1
    return acc, rounded


def _threads_from_env() -> int:
    raw = os.environ.get("BBP_THREADS", "0")
    try:
        t = int(raw)
    except ValueError:
        raise ValidationError(f"BBP_THREADS: not an integer: {raw!r}") from None
    if t < 0:
        raise ValidationError("BBP_THREADS: must be >= 0")
    if t == 0:
        return min(4, os.cpu_count() or 1)
    return t


def extract_bits(plan: SpigotPlan, n: int, count: int) -> DigitWindow:
    """Binary digits of the constant at positions n+1 .. n+count.

    The accumulator width is count + 64 guard bits, widened by the bit
    length of the expected term count when n is large, so the one-ulp-
    per-term budget always fits.  ``certified`` is the longest prefix
    whose bits cannot change when the true accumulated error (anywhere
    in [0, budget]) is added; it is computed, never assumed.
    """
    if count < 1 or count > MAX_WINDOW_BITS:
        raise ValidationError(f"count: must be in 1..{MAX_WINDOW_BITS}")
    if n < 0:
        raise ValidationError("position: must be nonnegative")
    beta = plan.beta
    length = plan.formula.length
    p = plan.numerator_scale
    q = plan.denominator_scale
    n_nonzero = len(plan.nonzero)

    head_k = n // beta + 1
    est_terms = (head_k + 2) * n_nonzero + 128
    width = count + 64 + max(0, est_terms.bit_length() - 32)
    mask = (1 << width) - 1

    # head: exact fractional parts via modular exponentiation
    chunks = [
        (k0, min(k0 + _HEAD_CHUNK, head_k)) for k0 in range(0, head_k, _HEAD_CHUNK)
    ]
    threads = _threads_from_env()
    if threads > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(
                pool.map(lambda c: _head_chunk(plan, n, width, *c), chunks)
            )
    else:
        parts = [_head_chunk(plan, n, width, *c) for c in chunks]
    acc = 0
    budget = 0
    for part_acc, part_rounded in parts:
        acc = (acc + part_acc) & mask
        budget += part_rounded

    # tail: directly summed fixed-point contributions below 2**(W-shift)
    max_pa = max(abs(p * a) for _, a in plan.nonzero)
    cutoff = -(2 * n_nonzero * max_pa).bit_length()
    k = head_k
    while True:
        shift = width + n - beta * k
        if shift < cutoff:
            break
        base_index = k * length
        for j, a in plan.nonzero:
            den = q * (base_index + j)
            num = p * a
            contrib = (num << shift) // den if shift >= 0 else num // (den << -shift)
            acc = (acc + contrib) & mask
            budget += 1
        k += 1
    budget += 1  # geometric remainder of the discarded tail, below one ulp

    certified = 0
    for c in range(count, -1, -1):
        low = acc & ((1 << (width - c)) - 1)
        if low + budget < 1 << (width - c):
            certified = c
            break
    bits = format(acc >> (width - count), f"0{count}b")
    return DigitWindow(position=n, radix=2, bits=bits, certified=certified)


def extract_hex(plan: SpigotPlan, hex_position: int, count: int) -> DigitWindow:
    """Hexadecimal digits starting after the given hex position.

    A wrapper over :func:`extract_bits` at bit position 4*hex_position,
    regrouping each four bits into one hex character.
    """
    if count < 1 or 4 * count > MAX_WINDOW_BITS:
        raise ValidationError(f"count: must be in 1..{MAX_WINDOW_BITS // 4}")
    if hex_position < 0:
        raise ValidationError("position: must be nonnegative")
    window = extract_bits(plan, 4 * hex_position, 4 * count)
    value = int(window.bits, 2)
    return DigitWindow(
        position=hex_position,
        radix=16,
        bits=format(value, f"0{count}x"),
        certified=window.certified // 4,
    )
