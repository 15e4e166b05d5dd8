"""Slow, independent verifiers for small instances.

Nothing here calls into the census or series modules or their polynomial
helpers: group closure, determinants, symmetric-power traces and series
expansions are all redone with plain integers, lists and ``Fraction``.
"""

from __future__ import annotations

import math
from collections import Counter, deque
from dataclasses import dataclass
from fractions import Fraction

ORACLE_LIMIT = 10**5
MOLIEN_MAX_RANK = 4
MOLIEN_MAX_DEGREE = 14


class OracleScaleError(ValueError):
    """Instance too large for the oracle."""


@dataclass
class OracleReport:
    check: str
    instance: str
    expected: object
    actual: object

    @property
    def passed(self) -> bool:
        return self.expected == self.actual

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.check} ({self.instance})"


def _matmul(A, B):
    n = len(A)
    return tuple(tuple(sum(A[i][k] * B[k][j] for k in range(n)) for j in range(n)) for i in range(n))


def closure(generators, rank: int, limit: int = ORACLE_LIMIT) -> list:
    """All products of the generators, by breadth-first search."""
    ident = tuple(tuple(int(i == j) for j in range(rank)) for i in range(rank))
    seen = {ident}
    elements = [ident]
    queue = deque([ident])
    while queue:
        w = queue.popleft()
        for g in generators:
            x = _matmul(g, w)
            if x not in seen:
                seen.add(x)
                elements.append(x)
                if len(elements) > limit:
                    raise OracleScaleError(f"group exceeds oracle limit {limit}")
                queue.append(x)
    return elements


def _det(M) -> Fraction:
    """Determinant by Gaussian elimination over the rationals."""
    A = [[Fraction(x) for x in row] for row in M]
    n = len(A)
    det = Fraction(1)
    for c in range(n):
        pivot = next((r for r in range(c, n) if A[r][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            A[c], A[pivot] = A[pivot], A[c]
            det = -det
        det *= A[c][c]
        for r in range(c + 1, n):
            f = A[r][c] / A[c][c]
            if f:
                for k in range(c, n):
                    A[r][k] -= f * A[c][k]
    return det


def _interpolated_charpoly(M) -> tuple[int, ...]:
    """det(xI - M), low-to-high, by Lagrange interpolation at x = 0..n."""
    n = len(M)
    xs = list(range(n + 1))
    ys = [_det([[x * (i == j) - M[i][j] for j in range(n)] for i in range(n)]) for x in xs]
    coeffs = [Fraction(0)] * (n + 1)
    for i, xi in enumerate(xs):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xj * basis[k + 1]
            denom *= xi - xj
        for k in range(n + 1):
            coeffs[k] += ys[i] * basis[k] / denom
    assert all(c.denominator == 1 for c in coeffs)
    return tuple(int(c) for c in coeffs)


def brute_census(rep) -> dict[tuple[int, ...], int]:
    """Census as {char poly coefficients (low-to-high): count}."""
    if rep.weyl_order > ORACLE_LIMIT:
        raise OracleScaleError(f"|W| = {rep.weyl_order} exceeds oracle limit {ORACLE_LIMIT}")
    counts: Counter = Counter()
    for w in closure(rep.generators, rep.rank):
        counts[_interpolated_charpoly(w)] += 1
    return dict(counts)


def _sym_power_traces(M, D: int) -> list[int]:
    """Traces of the action of M on polynomials of degree 0..D in r variables.

    The variable x_i is sent to the linear form sum_j M[i][j] x_j; the image
    of each monomial is expanded and its own coefficient read off.
    """
    r = len(M)
    linear = [{tuple(int(k == j) for k in range(r)): M[i][j] for j in range(r) if M[i][j]} for i in range(r)]
    zero = (0,) * r
    images = {zero: {zero: 1}}
    traces = [1]
    frontier = [zero]
    for _ in range(D):
        nxt = {}
        for mono in frontier:
            for i in range(r):
                new = list(mono)
                new[i] += 1
                new = tuple(new)
                if new in nxt:
                    continue
                # build from the predecessor obtained by removing the first variable used
                first = next(k for k in range(r) if new[k])
                pred = list(new)
                pred[first] -= 1
                base = images[tuple(pred)]
                prod: dict = {}
                for m1, c1 in base.items():
                    for m2, c2 in linear[first].items():
                        key = tuple(a + b for a, b in zip(m1, m2))
                        prod[key] = prod.get(key, 0) + c1 * c2
                nxt[new] = {k: v for k, v in prod.items() if v}
        images.update(nxt)
        frontier = list(nxt)
        traces.append(sum(img.get(mono, 0) for mono, img in nxt.items()))
    return traces


def molien_trace(rep, D: int) -> list[Fraction]:
    """Dimensions of the degree-m invariants, m = 0..D, by averaging traces."""
    if rep.rank > MOLIEN_MAX_RANK or D > MOLIEN_MAX_DEGREE:
        raise OracleScaleError(f"molien_trace limited to rank <= {MOLIEN_MAX_RANK}, D <= {MOLIEN_MAX_DEGREE}")
    elements = closure(rep.generators, rep.rank)
    totals = [0] * (D + 1)
    for w in elements:
        for m, tr in enumerate(_sym_power_traces(w, D)):
            totals[m] += tr
    return [Fraction(t, len(elements)) for t in totals]


def degree_product_series(degs, D: int) -> list[int]:
    """Coefficients of prod_i 1/(1 - q^{d_i}) up to q^D, by counting solutions."""
    coeffs = [1] + [0] * D
    for d in degs:
        for k in range(d, D + 1):
            coeffs[k] += coeffs[k - d]
    return coeffs


def su2_reference(n: int) -> tuple[int, ...]:
    """Expand ((1+q)^n (1+q^2) + (1-q)^n (1-q^2)) / 2, low-to-high."""
    if n < 0:
        raise ValueError("n must be non-negative")
    out = [0] * (n + 3)
    for k in range(n + 1):
        b = math.comb(n, k)
        sign = (-1) ** k
        out[k] += b + sign * b
        out[k + 2] += b - sign * b
    assert all(c % 2 == 0 for c in out)
    coeffs = [c // 2 for c in out]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)
