"""Acceptance suite: every criterion at its stated tolerance.

Each test prints one pass/fail line (visible with ``pytest -s`` or in
the failure output) and asserts the criterion as specified; tolerances
are pinned here, not deferred.
"""

from __future__ import annotations

import random
import time
from fractions import Fraction

from bbplog.family import family_coeffs, golden_constant, golden_formula
from bbplog.formula import BbpFormula, eval_P
from bbplog.numerics import FixedReal, agreement_bits, fx_log
from bbplog.spigot import build_plan, extract_bits
from bbplog.verify import verify_corollary, verify_decomposition, verify_theorem

from _oracles import fixedreal_bits
from test_numerics import (
    check_log_atanh_sound,
    check_modpow_oracle,
    check_ring_ops_sound,
    check_sqrt_sound,
)
from test_family import T1_COEFFS, NONZERO_POSITIONS


def _record(criterion: int, name: str, ok: bool, detail: str = "") -> None:
    verdict = "PASS" if ok else "FAIL"
    suffix = f" ({detail})" if detail else ""
    print(f"ACCEPTANCE {criterion} {name}: {verdict}{suffix}")
    assert ok, f"criterion {criterion} ({name}) failed{suffix}"


def test_criterion_1_theorem_identity():
    ok = True
    details = []
    for t in (1, 2, 3, 5, -1, -2):
        started = time.perf_counter()
        report = verify_theorem(t, 500)
        elapsed = time.perf_counter() - started
        good = report.passed and report.agreement_bits >= 500 and elapsed < 30.0
        ok = ok and good
        details.append(f"t={t}:{report.agreement_bits}b/{elapsed:.2f}s")
    _record(1, "theorem-identity-500-bits", ok, " ".join(details))


def test_criterion_2_corollary_identity():
    started = time.perf_counter()
    report = verify_corollary(1000)
    elapsed = time.perf_counter() - started
    ok = report.passed and report.agreement_bits >= 1000 and elapsed < 60.0
    _record(
        2,
        "corollary-identity-1000-bits",
        ok,
        f"{report.agreement_bits}b/{elapsed:.2f}s",
    )


def test_criterion_3_li1_decomposition():
    ok = True
    details = []
    bound = Fraction(1, 1 << 190)
    for t in (1, 2, 5, -2):
        report = verify_decomposition(t, 200)
        good = report.passed and report.agreement_bits >= 200
        # agreement of >= 200 bits certifies deviation < 2**-200 < 2**-190
        deviation_ok = Fraction(1, 1 << report.agreement_bits) < bound
        ok = ok and good and deviation_ok
        details.append(f"t={t}:{report.agreement_bits}b")
    _record(3, "li1-decomposition-200-bits", ok, " ".join(details))


def test_criterion_4_coefficient_exactness():
    exact = family_coeffs(1).formula.coeffs == T1_COEFFS
    pattern_ok = True
    for t in range(-50, 51):
        if t == 0:
            continue
        coeffs = family_coeffs(t).formula.coeffs
        nonzero = tuple(j for j, a in enumerate(coeffs, start=1) if a)
        if nonzero != NONZERO_POSITIONS:
            pattern_ok = False
        if any(coeffs[j - 1] != T1_COEFFS[j - 1] * t ** (39 - j) for j in nonzero):
            pattern_ok = False
    _record(4, "coefficient-exactness", exact and pattern_ok)


def test_criterion_5_spigot_correctness():
    plan = build_plan(golden_formula())
    ok = True
    details = []
    for position in (0, 100, 10_000, 100_000):
        oracle = golden_constant(position + 512)
        started = time.perf_counter()
        window = extract_bits(plan, position, 48)
        elapsed = time.perf_counter() - started
        expected = fixedreal_bits(oracle, position, 48)
        match = window.bits[: window.certified] == expected[: window.certified]
        good = match and window.certified == 48
        if position == 100_000:
            good = good and elapsed < 10.0
            details.append(f"pos=1e5:{elapsed:.2f}s")
        ok = ok and good
    rng = random.Random(20260818)
    for _ in range(100):
        n = rng.randrange(0, 2000)
        w1 = extract_bits(plan, n, 48)
        w2 = extract_bits(plan, n + 20, 48)
        if w1.bits[20:] != w2.bits[:28]:
            ok = False
            details.append(f"overlap-mismatch@n={n}")
            break
    _record(5, "spigot-oracle-agreement", ok, " ".join(details))


def test_criterion_6_numerics_soundness():
    ring = check_ring_ops_sound(1000)
    roots = check_sqrt_sound(1000)
    logs = check_log_atanh_sound(500)
    powmods = check_modpow_oracle(1000)
    ok = ring == 0 and roots == 0 and logs == 0 and powmods == 0
    _record(
        6,
        "numerics-interval-soundness",
        ok,
        f"violations ring={ring} sqrt={roots} log/atanh={logs} modpow={powmods}",
    )


def test_criterion_7_log2_sanity_constant():
    log2_formula = BbpFormula(
        degree=1, base=2, length=1, coeffs=(1,), prefactor=Fraction(1),
        label="2*log(2)",
    )
    F = 338
    oracle = fx_log(FixedReal.from_int(2, F)).mul_int(2)
    evaluated = eval_P(log2_formula, F).value
    eval_bits = agreement_bits(oracle, evaluated)

    # stitch four certified 64-bit windows into the first 256 bits
    plan = build_plan(log2_formula)
    stitched = ""
    spigot_ok = True
    for start in range(0, 256, 64):
        window = extract_bits(plan, start, 64)
        spigot_ok = spigot_ok and window.certified == 64
        stitched += window.bits
    expected = fixedreal_bits(oracle, 0, 256)
    spigot_ok = spigot_ok and stitched == expected
    ok = eval_bits >= 250 and spigot_ok
    _record(7, "log2-sanity-constant", ok, f"eval={eval_bits}b spigot256={spigot_ok}")
