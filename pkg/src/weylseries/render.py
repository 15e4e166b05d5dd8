"""Text and LaTeX rendering of exact polynomials.

Ascending powers, explicit "+" between terms, unit coefficients suppressed:
``1 + 3q + 6q^2 + 13q^3``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np


def _power(var: str, k: int, latex: bool) -> str:
    if k == 0:
        return ""
    if k == 1:
        return var
    if latex and k >= 10:
        return f"{var}^{{{k}}}"
    return f"{var}^{k}"


def _coeff(c, monomial: str, latex: bool) -> str:
    mag = abs(c)
    if monomial and mag == 1:
        return monomial
    if isinstance(mag, Fraction) and mag.denominator != 1:
        text = f"\\frac{{{mag.numerator}}}{{{mag.denominator}}}" if latex else f"({mag})"
    else:
        text = str(mag)
    return text + monomial


def _join(terms: list[tuple[object, str]], latex: bool) -> str:
    if not terms:
        return "0"
    out = []
    for k, (c, mono) in enumerate(terms):
        body = _coeff(c, mono, latex)
        if k == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append(("- " if c < 0 else "+ ") + body)
    return " ".join(out)


def format_poly(coeffs: Sequence, var: str = "q", latex: bool = False) -> str:
    terms = [(c, _power(var, k, latex)) for k, c in enumerate(coeffs) if c != 0]
    return _join(terms, latex)


def format_multi(coeffs: np.ndarray, vars: Sequence[str], latex: bool = False) -> str:
    """Multivariate polynomial, ordered by total degree then lexicographically."""
    arr = np.asarray(coeffs, dtype=object)
    idxs = [tuple(int(i) for i in idx) for idx in np.argwhere(arr != 0)]
    idxs.sort(key=lambda idx: (sum(idx), idx))
    terms = []
    for idx in idxs:
        mono = "".join(_power(v, k, latex) for v, k in zip(vars, idx))
        terms.append((arr[idx], mono))
    return _join(terms, latex)


def format_table(coeffs: np.ndarray, row_var: str = "q", col_var: str = "s") -> str:
    """Plain-text grid of a bivariate polynomial: rows row_var^i, columns col_var^j."""
    arr = np.asarray(coeffs, dtype=object)
    rows, cols = arr.shape
    head = [f"{row_var}\\{col_var}"] + [str(j) for j in range(cols)]
    body = [[str(i)] + [str(arr[i, j]) if arr[i, j] else "." for j in range(cols)] for i in range(rows)]
    widths = [max(len(r[k]) for r in [head] + body) for k in range(len(head))]
    lines = ["  ".join(cell.rjust(w) for cell, w in zip(r, widths)) for r in [head] + body]
    return "\n".join(lines)
