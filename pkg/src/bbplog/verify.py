"""Verification harness: identity checks with machine-readable reports.

Each check computes both sides of an identity along independent code
paths at the target precision plus 88 guard bits and reports how many
leading bits provably agree.  Reports serialize one per line as

    REPORT <subject> passed=<true|false> bits=<int> ms=<int>
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .errors import DomainError
from .family import (
    family_coeffs,
    golden_constant,
    golden_formula,
    lhs_value,
    verify_li1_decomposition,
)
from .formula import eval_P
from .numerics import FixedReal, agreement_bits
from .spigot import build_plan, extract_bits

__all__ = [
    "VerificationReport",
    "verify_theorem",
    "verify_corollary",
    "verify_decomposition",
    "GUARD_BITS",
]

# working precision exceeds the target by this margin; property tests put
# the worst observed ulp loss orders of magnitude below it
GUARD_BITS = 88


@dataclass(frozen=True, slots=True)
class VerificationReport:
    """One identity check: the two sides, their agreement, the verdict."""

    subject: str
    lhs_bits: str
    rhs_bits: str
    agreement_bits: int
    threshold: int
    passed: bool
    elapsed_ms: int

    def line(self) -> str:
        flag = "true" if self.passed else "false"
        return (
            f"REPORT {self.subject} passed={flag}"
            f" bits={self.agreement_bits} ms={self.elapsed_ms}"
        )


def _summary(x: FixedReal) -> str:
    return x.decimal(30)


def _report(
    subject: str,
    lhs: FixedReal,
    rhs: FixedReal,
    threshold: int,
    started: float,
    extra_ok: bool = True,
) -> VerificationReport:
    agree = agreement_bits(lhs, rhs)
    return VerificationReport(
        subject=subject,
        lhs_bits=_summary(lhs),
        rhs_bits=_summary(rhs),
        agreement_bits=agree,
        threshold=threshold,
        passed=agree >= threshold and extra_ok,
        elapsed_ms=int((time.perf_counter() - started) * 1000),
    )


def verify_theorem(t: int, target_bits: int) -> VerificationReport:
    """Closed-form left side vs the evaluated series for parameter t."""
    if t == 0:
        raise DomainError("t must be a nonzero integer")
    started = time.perf_counter()
    work = target_bits + GUARD_BITS
    inst = family_coeffs(t)
    lhs = lhs_value(inst, work)
    rhs = eval_P(inst.formula, work).value
    return _report(f"theorem(t={t})", lhs, rhs, target_bits, started)


def verify_corollary(target_bits: int) -> VerificationReport:
    """sqrt(5)*log(phi) from sqrt/log vs the evaluated golden formula.

    Also cross-checks the first spigot window at position 0 against the
    oracle's leading fraction bits; a mismatch fails the report outright.
    """
    started = time.perf_counter()
    work = target_bits + GUARD_BITS
    oracle = golden_constant(work)
    evaluated = eval_P(golden_formula(), work).value

    window = extract_bits(build_plan(golden_formula()), 0, 32)
    mask = (1 << work) - 1
    oracle_frac_bits = format((oracle.mantissa & mask) >> (work - 32), "032b")
    spigot_ok = window.certified >= 32 and window.bits == oracle_frac_bits

    return _report(
        "corollary", oracle, evaluated, target_bits, started, extra_ok=spigot_ok
    )


def verify_decomposition(t: int, target_bits: int) -> VerificationReport:
    """Wrap the four-term polylogarithm decomposition check."""
    started = time.perf_counter()
    check = verify_li1_decomposition(t, target_bits)
    return _report(
        f"decomposition(t={t})",
        check.lhs,
        check.rhs,
        target_bits,
        started,
    )
