"""Digit extraction against the sqrt/log oracle and its own invariants."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

import bbplog.spigot as spigot_mod
from bbplog.errors import UnsupportedFormulaError, ValidationError
from bbplog.family import golden_constant, golden_formula
from bbplog.formula import BbpFormula
from bbplog.numerics import FixedReal, fx_log
from bbplog.spigot import build_plan, extract_bits, extract_hex

from _oracles import fixedreal_bits

LOG2_FORMULA = BbpFormula(
    degree=1, base=2, length=1, coeffs=(1,), prefactor=Fraction(1), label="2*log(2)"
)


@pytest.fixture(scope="module")
def golden_plan():
    return build_plan(golden_formula())


@pytest.fixture(scope="module")
def log2_plan():
    return build_plan(LOG2_FORMULA)


# -- plan construction -------------------------------------------------------


def test_build_plan_golden(golden_plan):
    assert golden_plan.beta == 20
    assert golden_plan.numerator_scale == 5
    assert golden_plan.denominator_scale == 3 << 20
    assert len(golden_plan.nonzero) == 24


def test_build_plan_log2(log2_plan):
    assert log2_plan.beta == 1
    assert log2_plan.denominator_scale == 1


def test_build_plan_rejects_non_power_of_two_base():
    f = BbpFormula(degree=1, base=5, length=1, coeffs=(1,), prefactor=Fraction(1))
    with pytest.raises(UnsupportedFormulaError, match="base"):
        build_plan(f)


def test_build_plan_rejects_higher_degree():
    f = BbpFormula(degree=2, base=2, length=1, coeffs=(1,), prefactor=Fraction(1))
    with pytest.raises(UnsupportedFormulaError, match="degree"):
        build_plan(f)


# -- extraction vs oracle -----------------------------------------------------


def test_first_bits_of_golden_constant(golden_plan):
    window = extract_bits(golden_plan, 0, 32)
    assert window.certified == 32
    oracle = golden_constant(256)
    assert window.bits == fixedreal_bits(oracle, 0, 32)


def test_log2_plan_first_bits(log2_plan):
    # the constant is 2*log(2) = 1.386...; extraction sees its fraction
    window = extract_bits(log2_plan, 0, 32)
    assert window.certified == 32
    two_log2 = fx_log(FixedReal.from_int(2, 256)).mul_int(2)
    assert window.bits == fixedreal_bits(two_log2, 0, 32)


@pytest.mark.parametrize("position", [0, 100, 10_000])
def test_certified_bits_match_oracle(golden_plan, position):
    window = extract_bits(golden_plan, position, 48)
    oracle = golden_constant(position + 512)
    expected = fixedreal_bits(oracle, position, 48)
    assert window.certified == 48
    assert window.bits[: window.certified] == expected[: window.certified]


def test_overlap_coherence(golden_plan):
    rng = random.Random(20260817)
    for _ in range(25):
        n = rng.randrange(0, 3000)
        w1 = extract_bits(golden_plan, n, 48)
        w2 = extract_bits(golden_plan, n + 20, 48)
        assert w1.bits[20:] == w2.bits[:28]


def test_determinism_and_partition_independence(golden_plan, monkeypatch):
    baseline = extract_bits(golden_plan, 5000, 40)
    assert baseline == extract_bits(golden_plan, 5000, 40)
    monkeypatch.setattr(spigot_mod, "_HEAD_CHUNK", 17)
    chunked = extract_bits(golden_plan, 5000, 40)
    monkeypatch.setenv("BBP_THREADS", "3")
    threaded = extract_bits(golden_plan, 5000, 40)
    assert chunked == baseline
    assert threaded == baseline


def test_env_thread_cap_validation(golden_plan, monkeypatch):
    monkeypatch.setenv("BBP_THREADS", "zebra")
    with pytest.raises(ValidationError, match="BBP_THREADS"):
        extract_bits(golden_plan, 0, 8)
    monkeypatch.setenv("BBP_THREADS", "-1")
    with pytest.raises(ValidationError, match="BBP_THREADS"):
        extract_bits(golden_plan, 0, 8)


# -- hex windows --------------------------------------------------------------


def test_hex_regroups_bits(golden_plan):
    bits = extract_bits(golden_plan, 0, 32)
    hexw = extract_hex(golden_plan, 0, 8)
    assert hexw.radix == 16
    assert int(hexw.bits, 16) == int(bits.bits, 2)
    assert hexw.certified == 8


def test_hex_window_matches_oracle_at_10k(golden_plan):
    hexw = extract_hex(golden_plan, 10_000, 8)
    oracle = golden_constant(4 * 10_000 + 256)
    expected_bits = fixedreal_bits(oracle, 4 * 10_000, 32)
    assert hexw.bits == format(int(expected_bits, 2), "08x")


def test_window_validation(golden_plan):
    with pytest.raises(ValidationError, match="count"):
        extract_bits(golden_plan, 0, 0)
    with pytest.raises(ValidationError, match="count"):
        extract_bits(golden_plan, 0, 65)
    with pytest.raises(ValidationError, match="count"):
        extract_hex(golden_plan, 0, 0)
    with pytest.raises(ValidationError, match="position"):
        extract_bits(golden_plan, -1, 8)
