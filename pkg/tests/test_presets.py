"""Embedded presets must match what the generators emit."""

from __future__ import annotations

from fractions import Fraction

import pytest

from bbplog.family import golden_formula
from bbplog.formula import emit_formula, parse_formula
from bbplog.presets import GOLDEN_TEXT, LOG2_TEXT, load_preset


def test_golden_preset_round_trips_byte_for_byte():
    f = parse_formula(GOLDEN_TEXT)
    assert emit_formula(f) == GOLDEN_TEXT


def test_golden_preset_equals_generated_corollary_formula():
    assert emit_formula(golden_formula()) == GOLDEN_TEXT
    assert parse_formula(GOLDEN_TEXT) == golden_formula()


def test_golden_preset_fields():
    f = load_preset("golden")
    assert f.length == 40
    assert f.base == 1 << 20
    assert f.prefactor == Fraction(5, 3 << 20)
    assert f.coeffs[0] == 1 << 19


def test_log2_preset():
    f = load_preset("log2")
    assert emit_formula(f) == LOG2_TEXT
    assert (f.degree, f.base, f.length, f.coeffs) == (1, 2, 1, (1,))


def test_unknown_preset_rejected():
    with pytest.raises(KeyError, match="unknown preset"):
        load_preset("tau")
