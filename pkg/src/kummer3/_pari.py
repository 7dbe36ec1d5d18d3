"""Shared PARI instance (class groups of sextic fields, polredbest)."""

from __future__ import annotations

import os

import cypari2

# let the stack grow on demand rather than fail on larger sextics
pari = cypari2.Pari(sizemax=int(os.environ.get("KUMMER3_PARI_STACK", 2**32)))
pari.set_real_precision(60)


def poly(coeffs_high_first, var: str = "x"):
    """PARI polynomial from integer or rational coefficients, leading first."""
    n = len(coeffs_high_first) - 1
    terms = [f"({c})*{var}^{n - i}" for i, c in enumerate(coeffs_high_first) if c]
    return pari("+".join(terms) or "0")


def to_ints(vec) -> list[int]:
    return [int(c) for c in vec]
