"""Published Poincare polynomials used as regression fixtures.

Each entry maps a label to (descriptor, n, coefficients low-to-high) for
P(Hom(Z^n, G)_1; q).
"""

from __future__ import annotations

KNOWN_POLYNOMIALS: dict[str, tuple[str, int, tuple[int, ...]]] = {
    "U(2), n=2": ("U(2)", 2, (1, 2, 2, 4, 5, 2)),
    "U(2), n=3": ("U(2)", 3, (1, 3, 6, 13, 18, 13, 6, 3, 1)),
    "U(2), n=4": ("U(2)", 4, (1, 4, 12, 32, 54, 56, 44, 32, 17, 4)),
    "U(3), n=2": ("U(3)", 2, (1, 2, 2, 4, 7, 10, 11, 8, 8, 8, 3)),
    "U(3), n=3": ("U(3)", 3, (1, 3, 6, 14, 30, 54, 73, 75, 75, 73, 54, 30, 14, 6, 3, 1)),
    "U(3), n=4": (
        "U(3)",
        4,
        (1, 4, 12, 36, 96, 212, 357, 472, 555, 604, 574, 468, 330, 204, 113, 48, 10),
    ),
    "G2, n=1": ("G2", 1, (1, 0, 0, 1) + (0,) * 7 + (1, 0, 0, 1)),
    "G2, n=2": ("G2", 2, (1, 0, 1, 2, 1, 2, 1, 0, 0, 0, 1, 2, 0, 2, 3)),
    "G2, n=3": ("G2", 3, (1, 0, 3, 3, 6, 9, 3, 3, 3, 2, 3, 3, 3, 9, 6, 3, 3, 0, 1)),
}

# SU(2) has the closed form ((1+q)^n (1+q^2) + (1-q)^n (1-q^2)) / 2; checked for these n
SU2_RANGE = range(1, 9)
