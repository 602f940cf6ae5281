"""The P(s, b, l, A) formula object, its evaluator, and its file format.

A formula stands for the constant

    prefactor * sum_{k>=0} b**-k * sum_{j=1..l} a_j / (k*l + j)**s

and the evaluator returns it as a :class:`FixedReal` whose error bound
covers both the per-term truncations and the discarded geometric tail.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ParseError, ValidationError
from .numerics import FixedReal, _ceil_div, _tdiv

__all__ = ["BbpFormula", "EvalResult", "eval_P", "parse_formula", "emit_formula"]


@dataclass(frozen=True, slots=True)
class BbpFormula:
    """Degree, base, length, coefficient vector, and rational prefactor."""

    degree: int
    base: int
    length: int
    coeffs: tuple[int, ...]
    prefactor: Fraction
    label: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        object.__setattr__(self, "prefactor", Fraction(self.prefactor))
        self.validate()

    def validate(self) -> None:
        if self.degree < 1:
            raise ValidationError("degree: must be a positive integer")
        if self.base < 2:
            raise ValidationError("base: must be >= 2")
        if self.length < 1:
            raise ValidationError("length: must be a positive integer")
        if len(self.coeffs) != self.length:
            raise ValidationError(
                f"coeffs: expected {self.length} entries, got {len(self.coeffs)}"
            )
        if not any(self.coeffs):
            raise ValidationError("coeffs: at least one entry must be nonzero")
        if self.prefactor == 0:
            raise ValidationError("prefactor: must be nonzero")
        if "\n" in self.label:
            raise ValidationError("label: must be a single line")


@dataclass(frozen=True, slots=True)
class EvalResult:
    """Evaluated constant plus how the truncation was accounted."""

    value: FixedReal
    terms_used: int
    tail_bound_ulp: int


def _tail_cutoff(f: BbpFormula, frac_bits: int) -> int:
    """First K whose geometric tail majorant drops below one ulp.

    Tail for k >= K:  max|a_j| * l / (K*l+1)**s * b**-K * b/(b-1),
    using (k*l+1) >= (K*l+1) and the geometric sum of b**-k.
    """
    max_a = max(abs(a) for a in f.coeffs)
    lhs_fixed = max_a * f.length * f.base << frac_bits
    bpow = 1
    K = 0
    while lhs_fixed >= (K * f.length + 1) ** f.degree * bpow * (f.base - 1):
        bpow *= f.base
        K += 1
    return K


def eval_P(f: BbpFormula, frac_bits: int) -> EvalResult:
    """Evaluate prefactor * P(s, b, l, A) to frac_bits of precision.

    Inner denominators (k*l + j)**s and the running power b**k are exact
    integers; each nonzero term costs one truncating division, so the
    rounding budget grows additively and the final bound is the per-term
    count plus the scaled tail majorant.
    """
    f.validate()
    if frac_bits < 64:
        raise ValidationError("frac_bits: must be >= 64")
    K = _tail_cutoff(f, frac_bits)
    one = 1 << frac_bits
    acc = 0
    err = 0
    bpow = 1
    for k in range(K):
        base_index = k * f.length
        for j, a in enumerate(f.coeffs, start=1):
            if a == 0:
                continue
            den = bpow * (base_index + j) ** f.degree
            q, rem = divmod(a << frac_bits, den)
            if rem:
                if q < 0:
                    q += 1  # truncate toward zero
                err += 1
            acc += q
        bpow *= f.base
    # fold in the prefactor exactly, then charge the scaled tail
    p, qd = f.prefactor.numerator, f.prefactor.denominator
    num = acc * p
    m = _tdiv(num, qd)
    err_scaled = _ceil_div(err * abs(p), qd) if err else 0
    if m * qd != num:
        err_scaled += 1
    max_a = max(abs(a) for a in f.coeffs)
    tail_num = max_a * f.length * f.base * abs(p) << frac_bits
    tail_den = (K * f.length + 1) ** f.degree * bpow * (f.base - 1) * qd
    tail_ulp = _ceil_div(tail_num, tail_den)
    value = FixedReal(m, frac_bits, err_scaled + tail_ulp)
    return EvalResult(value=value, terms_used=K, tail_bound_ulp=tail_ulp)


# -- file format ----------------------------------------------------------
#
#   bbp 1
#   s <int>
#   b <int>
#   l <int>
#   pre <num>/<den>
#   A <a_1> ... <a_l>
#   label <free text>        (optional)


def parse_formula(text: str) -> BbpFormula:
    """Parse the line-oriented formula format; round-trips with emit."""
    lines = text.splitlines()
    if not lines or not text.strip():
        raise ParseError("empty input", 1)

    def expect(idx: int, key: str) -> str:
        if idx >= len(lines):
            raise ParseError(f"missing '{key}' line", idx + 1)
        line = lines[idx]
        if not line.startswith(key + " "):
            raise ParseError(f"expected '{key} ...', got {line!r}", idx + 1)
        return line[len(key) + 1 :]

    def parse_int(token: str, idx: int, what: str) -> int:
        try:
            return int(token)
        except ValueError:
            raise ParseError(f"bad integer for {what}: {token!r}", idx + 1) from None

    if lines[0] != "bbp 1":
        raise ParseError(f"unknown version tag {lines[0]!r}, expected 'bbp 1'", 1)
    s = parse_int(expect(1, "s"), 1, "s")
    b = parse_int(expect(2, "b"), 2, "b")
    l = parse_int(expect(3, "l"), 3, "l")
    pre_text = expect(4, "pre")
    if "/" not in pre_text:
        raise ParseError(f"prefactor must be <num>/<den>, got {pre_text!r}", 5)
    num_text, den_text = pre_text.split("/", 1)
    num = parse_int(num_text, 4, "prefactor numerator")
    den = parse_int(den_text, 4, "prefactor denominator")
    if den <= 0:
        raise ParseError("prefactor denominator must be positive", 5)
    coeffs = tuple(
        parse_int(tok, 5, "coefficient") for tok in expect(5, "A").split()
    )
    label = ""
    next_line = 6
    if len(lines) > 6:
        label = expect(6, "label")
        next_line = 7
    for idx in range(next_line, len(lines)):
        if lines[idx].strip():
            raise ParseError(f"unexpected trailing line {lines[idx]!r}", idx + 1)
    try:
        return BbpFormula(
            degree=s,
            base=b,
            length=l,
            coeffs=coeffs,
            prefactor=Fraction(num, den),
            label=label,
        )
    except ValidationError:
        raise


def emit_formula(f: BbpFormula) -> str:
    """Canonical serialization: single spaces, no trailing whitespace."""
    f.validate()
    pre = f.prefactor
    lines = [
        "bbp 1",
        f"s {f.degree}",
        f"b {f.base}",
        f"l {f.length}",
        f"pre {pre.numerator}/{pre.denominator}",
        "A " + " ".join(str(a) for a in f.coeffs),
    ]
    if f.label:
        lines.append(f"label {f.label}")
    return "\n".join(lines) + "\n"
