"""Built-in formula files, embedded byte-for-byte in canonical form.

``golden`` is the binary digit-extraction formula for sqrt(5)*log(phi);
``log2`` is the classical sanity series whose value is 2*log(2).  The
texts below are the shipped artifacts: the family generator must
reproduce the golden file exactly (covered by tests).
"""

from __future__ import annotations

from .formula import BbpFormula, parse_formula

__all__ = ["GOLDEN_TEXT", "LOG2_TEXT", "PRESETS", "load_preset"]

GOLDEN_TEXT = (
    "bbp 1\n"
    "s 1\n"
    "b 1048576\n"
    "l 40\n"
    "pre 5/3145728\n"
    "A 524288 0 262144 262144 0 0 -65536 65536 32768 0"
    " -16384 -16384 8192 0 0 -4096 -2048 0 -1024 0"
    " -512 0 -256 -256 0 0 64 -64 -32 0"
    " 16 16 -8 0 0 4 2 0 1 0\n"
    "label sqrt(5)*log(phi)\n"
)

LOG2_TEXT = "bbp 1\ns 1\nb 2\nl 1\npre 1/1\nA 1\nlabel 2*log(2)\n"

PRESETS = {"golden": GOLDEN_TEXT, "log2": LOG2_TEXT}


def load_preset(name: str) -> BbpFormula:
    """Parse one of the embedded formula files by name."""
    try:
        text = PRESETS[name]
    except KeyError:
        raise KeyError(
            f"unknown preset {name!r}; available: {', '.join(sorted(PRESETS))}"
        ) from None
    return parse_formula(text)
