"""Exact integer polynomials, truncated multivariate power series, and
division-free characteristic polynomials.

Everything here works over Python integers (and ``fractions.Fraction`` only
where a non-unit constant term forces it).  No floating point is used.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np


class NotDivisibleError(ArithmeticError):
    """Raised when an exact division leaves a remainder."""


class NotAUnitError(ArithmeticError):
    """Raised when inverting a series that is not a unit of its ring."""


def _strip(coeffs: Iterable) -> tuple:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class IntPoly:
    """Dense univariate polynomial with integer coefficients, low-to-high.

    The zero polynomial has an empty coefficient tuple and degree -1.
    """

    coeffs: tuple[int, ...]
    var: str = "t"

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _strip(int(c) for c in self.coeffs))

    @classmethod
    def one(cls, var: str = "t") -> IntPoly:
        return cls((1,), var)

    @classmethod
    def monomial(cls, k: int, coeff: int = 1, var: str = "t") -> IntPoly:
        return cls((0,) * k + (coeff,), var)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, k: int) -> int:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def relabel(self, var: str) -> IntPoly:
        return IntPoly(self.coeffs, var)

    def _coerce(self, other) -> IntPoly:
        if isinstance(other, IntPoly):
            if other.var != self.var and other.degree > 0 and self.degree > 0:
                raise ValueError(f"variable mismatch: {self.var} vs {other.var}")
            return other
        if isinstance(other, int):
            return IntPoly((other,), self.var)
        return NotImplemented

    def __add__(self, other) -> IntPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self), len(other))
        return IntPoly([self[k] + other[k] for k in range(n)], self.var)

    __radd__ = __add__

    def __neg__(self) -> IntPoly:
        return IntPoly([-c for c in self.coeffs], self.var)

    def __sub__(self, other) -> IntPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> IntPoly:
        return (-self) + other

    def __mul__(self, other) -> IntPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.coeffs or not other.coeffs:
            return IntPoly((), self.var)
        out = [0] * (len(self) + len(other) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> IntPoly:
        if k < 0:
            raise ValueError("negative exponent")
        result = IntPoly.one(self.var)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __call__(self, x):
        """Evaluate by Horner's rule; exact for int and Fraction arguments."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def substitute_power(self, k: int) -> IntPoly:
        """Return p(x**k)."""
        out = [0] * (k * self.degree + 1) if self.coeffs else []
        for i, c in enumerate(self.coeffs):
            out[k * i] = c
        return IntPoly(out, self.var)

    def is_palindromic(self) -> bool:
        return self.coeffs == self.coeffs[::-1]

    def __str__(self) -> str:
        from weylseries.render import format_poly

        return format_poly(self.coeffs, self.var)


def exact_divide(a: IntPoly, b: IntPoly) -> IntPoly:
    """Polynomial long division that insists on a zero remainder."""
    if not b.coeffs:
        raise ZeroDivisionError("division by the zero polynomial")
    lead = b.coeffs[-1]
    rem = list(a.coeffs)
    nb = len(b.coeffs)
    if len(rem) < nb:
        if rem:
            raise NotDivisibleError(f"{a} is not divisible by {b}")
        return IntPoly((), a.var)
    quot = [0] * (len(rem) - nb + 1)
    for k in range(len(quot) - 1, -1, -1):
        c = rem[k + nb - 1]
        if c % lead:
            raise NotDivisibleError(f"{a} is not divisible by {b}")
        q = c // lead
        quot[k] = q
        if q:
            for j, bc in enumerate(b.coeffs):
                rem[k + j] -= q * bc
    if any(rem):
        raise NotDivisibleError(f"{a} is not divisible by {b}")
    return IntPoly(quot, a.var)


def charpoly(M: Sequence[Sequence[int]]) -> IntPoly:
    """det(tI - M) for a square integer matrix, by Berkowitz's algorithm.

    Division-free: only ring operations on the entries are used.
    """
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("matrix must be square")
    # p holds the char poly of the leading k x k block, high-to-low
    p = [1]
    for k in range(n):
        vec = [1, -M[k][k]]
        row = M[k][:k]
        col = [M[i][k] for i in range(k)]
        for _ in range(k):
            vec.append(-sum(r * c for r, c in zip(row, col)))
            col = [sum(M[i][j] * col[j] for j in range(k)) for i in range(k)]
        new = [0] * (k + 2)
        for i in range(k + 2):
            for j in range(max(0, i - len(vec) + 1), min(i + 1, len(p))):
                new[i] += vec[i - j] * p[j]
        p = new
    return IntPoly(p[::-1], "t")


def batch_charpoly(mats: np.ndarray) -> np.ndarray:
    """Vectorised Berkowitz over a stack of (N, n, n) integer matrices.

    Returns an (N, n+1) int64 array of coefficients, low-to-high.  Intended
    for finite-order matrices with small entries; raises if intermediate
    values approach the int64 range.
    """
    mats = np.asarray(mats, dtype=np.int64)
    N, n, _ = mats.shape
    p = np.ones((N, 1), dtype=np.int64)
    for k in range(n):
        vec = [np.ones(N, dtype=np.int64), -mats[:, k, k]]
        row = mats[:, k, :k]
        col = mats[:, :k, k]
        sub = mats[:, :k, :k]
        for _ in range(k):
            vec.append(-np.einsum("ij,ij->i", row, col))
            col = np.einsum("nij,nj->ni", sub, col)
        if col.size and np.abs(col).max() > 2**40:
            raise OverflowError("batch_charpoly: entries too large for int64")
        vec = np.stack(vec, axis=1)
        new = np.zeros((N, k + 2), dtype=np.int64)
        for i in range(k + 2):
            for j in range(max(0, i - vec.shape[1] + 1), min(i + 1, p.shape[1])):
                new[:, i] += vec[:, i - j] * p[:, j]
        p = new
    return p[:, ::-1].copy()


def dets_from_charpoly(chi: IntPoly) -> tuple[IntPoly, IntPoly, IntPoly]:
    """From det(tI - w) derive det(1+qw), det(1-qw) and det(1-q^2 w) in q.

    >>> plus, minus, q2 = dets_from_charpoly(IntPoly((-1, 0, 1)))
    >>> str(plus), str(minus), str(q2)
    ('1 - q^2', '1 - q^2', '1 - q^4')
    """
    if not chi.is_monic():
        raise ValueError(f"characteristic polynomial must be monic, got {chi}")
    r = chi.degree
    # det(1 - qw) = q^r chi(1/q): the reversed coefficient list
    minus = IntPoly(chi.coeffs[::-1], "q")
    # det(1 + qw) = (-q)^r chi(-1/q) = det(1 - q(-w))
    plus = IntPoly([c * (-1) ** k for k, c in enumerate(minus.coeffs)], "q")
    # det(1 - q^2 w) is det(1 - qw) at q^2; plus * minus would be det(1 - q^2 w^2)
    return plus, minus, minus.substitute_power(2)


# ---------------------------------------------------------------------------
# truncated multivariate series


class TruncSeries:
    """Dense multivariate series with exact coefficients.

    ``orders[k]`` is the truncation order of variable ``vars[k]`` (terms of
    degree > order are discarded), or ``None`` when that variable is kept as
    an exact polynomial.  A series with every order ``None`` is an exact
    polynomial.  Arithmetic never extends a truncation order.
    """

    __slots__ = ("vars", "orders", "coeffs")

    def __init__(self, coeffs, vars: Sequence[str], orders: Sequence[int | None] | None = None):
        vars = tuple(vars)
        arr = np.array(coeffs, dtype=object)
        if arr.ndim == 0:
            arr = arr.reshape((1,) * len(vars))
        if arr.ndim != len(vars):
            raise ValueError(f"coefficient array has {arr.ndim} axes, expected {len(vars)}")
        orders = tuple(orders) if orders is not None else (None,) * len(vars)
        if len(orders) != len(vars):
            raise ValueError("one truncation order per variable")
        # zero-size axes would break slicing arithmetic
        if 0 in arr.shape:
            arr = np.zeros((1,) * len(vars), dtype=object)
        self.vars = vars
        self.orders = orders
        self.coeffs = _fit(arr, orders)

    # -- construction -----------------------------------------------------
    @classmethod
    def zero(cls, vars, orders=None) -> TruncSeries:
        return cls(np.zeros((1,) * len(vars), dtype=object), vars, orders)

    @classmethod
    def constant(cls, c, vars, orders=None) -> TruncSeries:
        arr = np.zeros((1,) * len(vars), dtype=object)
        arr[(0,) * len(vars)] = c
        return cls(arr, vars, orders)

    @classmethod
    def from_poly(cls, p: IntPoly, vars, orders=None, axis: str | None = None) -> TruncSeries:
        """Embed a univariate polynomial along ``axis`` (default: its own var)."""
        axis = axis or p.var
        k = tuple(vars).index(axis)
        shape = [1] * len(vars)
        shape[k] = max(len(p.coeffs), 1)
        arr = np.zeros(shape, dtype=object)
        for i, c in enumerate(p.coeffs):
            idx = [0] * len(vars)
            idx[k] = i
            arr[tuple(idx)] = c
        return cls(arr, vars, orders)

    # -- helpers ----------------------------------------------------------
    def _check(self, other: TruncSeries):
        if self.vars != other.vars or self.orders != other.orders:
            raise ValueError(
                f"incompatible series: {self.vars}/{self.orders} vs {other.vars}/{other.orders}"
            )

    def _lift(self, other) -> TruncSeries:
        if isinstance(other, TruncSeries):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return TruncSeries.constant(other, self.vars, self.orders)
        return NotImplemented

    def __getitem__(self, idx) -> object:
        idx = tuple(idx) if isinstance(idx, tuple) else (idx,)
        if any(i < 0 or i >= s for i, s in zip(idx, self.coeffs.shape)):
            return 0
        return self.coeffs[idx]

    @property
    def shape(self) -> tuple[int, ...]:
        return self.coeffs.shape

    def degree(self, var: str) -> int:
        """Largest exponent of ``var`` carrying a nonzero coefficient (-1 if zero)."""
        k = self.vars.index(var)
        nz = np.argwhere(self.coeffs != 0)
        return int(nz[:, k].max()) if len(nz) else -1

    def is_zero(self) -> bool:
        return not np.any(self.coeffs != 0)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other) -> TruncSeries:
        other = self._lift(other)
        if other is NotImplemented:
            return other
        shape = tuple(max(a, b) for a, b in zip(self.shape, other.shape))
        out = np.zeros(shape, dtype=object)
        out[tuple(slice(0, s) for s in self.shape)] += self.coeffs
        out[tuple(slice(0, s) for s in other.shape)] += other.coeffs
        return TruncSeries(out, self.vars, self.orders)

    __radd__ = __add__

    def __neg__(self) -> TruncSeries:
        return TruncSeries(-self.coeffs, self.vars, self.orders)

    def __sub__(self, other) -> TruncSeries:
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> TruncSeries:
        return (-self) + other

    def __mul__(self, other) -> TruncSeries:
        if isinstance(other, (int, Fraction)):
            return TruncSeries(self.coeffs * other, self.vars, self.orders)
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> TruncSeries:
        return pow_series(self, k)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncSeries):
            if isinstance(other, (int, Fraction)):
                other = TruncSeries.constant(other, self.vars, self.orders)
            else:
                return NotImplemented
        if self.vars != other.vars or self.orders != other.orders:
            return False
        return (self - other).is_zero()

    __hash__ = None

    def scale_down(self, divisor: int) -> TruncSeries:
        """Divide every coefficient by ``divisor``, insisting on exactness."""
        out = np.empty(self.shape, dtype=object)
        for idx, c in np.ndenumerate(self.coeffs):
            q, r = divmod(c, divisor)
            if r:
                raise NotDivisibleError(
                    f"coefficient {c} at {dict(zip(self.vars, idx))} not divisible by {divisor}"
                )
            out[idx] = q
        return TruncSeries(out, self.vars, self.orders)

    def truncate(self, orders: Sequence[int | None]) -> TruncSeries:
        return truncate(self, orders)

    def to_polynomial(self) -> TruncSeries:
        """Drop truncation orders, trimming trailing zero slabs."""
        return TruncSeries(_trim(self.coeffs), self.vars, None)

    def restrict(self, **caps: int) -> TruncSeries:
        """Keep only terms with exponent <= caps[var] for the named variables."""
        sl = []
        for v, s in zip(self.vars, self.shape):
            sl.append(slice(0, min(s, caps[v] + 1)) if v in caps else slice(0, s))
        return TruncSeries(self.coeffs[tuple(sl)], self.vars, self.orders)

    def substitute_equal(self, keep: str, drop: str) -> TruncSeries:
        """Set variable ``drop`` equal to ``keep`` (e.g. s := q)."""
        kk, kd = self.vars.index(keep), self.vars.index(drop)
        new_vars = tuple(v for v in self.vars if v != drop)
        new_orders = tuple(o for v, o in zip(self.vars, self.orders) if v != drop)
        shape = list(self.shape)
        shape[kk] = self.shape[kk] + self.shape[kd] - 1
        del shape[kd]
        out = np.zeros(shape, dtype=object)
        for idx, c in np.ndenumerate(self.coeffs):
            if c:
                new = list(idx)
                new[kk] += idx[kd]
                del new[kd]
                out[tuple(new)] += c
        return TruncSeries(out, new_vars, new_orders)

    def coefficient(self, var: str, k: int) -> TruncSeries:
        """Coefficient of var**k, as a series in the remaining variables."""
        ax = self.vars.index(var)
        new_vars = tuple(v for v in self.vars if v != var)
        new_orders = tuple(o for v, o in zip(self.vars, self.orders) if v != var)
        if k >= self.shape[ax]:
            return TruncSeries.zero(new_vars, new_orders)
        return TruncSeries(np.take(self.coeffs, k, axis=ax), new_vars, new_orders)

    def to_intpoly(self) -> IntPoly:
        if len(self.vars) != 1:
            raise ValueError("to_intpoly needs a univariate series")
        for c in self.coeffs:
            if isinstance(c, Fraction) and c.denominator != 1:
                raise ValueError(f"non-integral coefficient {c}")
        return IntPoly([int(c) for c in self.coeffs], self.vars[0])

    def to_lists(self):
        """Nested lists of ints/Fractions, trailing zeros trimmed."""
        return _trim(self.coeffs).tolist()

    def __repr__(self) -> str:
        return f"TruncSeries(vars={self.vars}, orders={self.orders}, shape={self.shape})"


def _fit(arr: np.ndarray, orders) -> np.ndarray:
    """Clip truncated axes to order+1 and zero-pad them up to it."""
    target = [s if o is None else o + 1 for s, o in zip(arr.shape, orders)]
    if list(arr.shape) == target:
        return arr
    out = np.zeros(target, dtype=object)
    sl = tuple(slice(0, min(a, t)) for a, t in zip(arr.shape, target))
    out[sl] = arr[sl]
    return out


def _trim(arr: np.ndarray) -> np.ndarray:
    nz = np.argwhere(arr != 0)
    if not len(nz):
        return np.zeros((1,) * arr.ndim, dtype=object)
    hi = nz.max(axis=0) + 1
    return arr[tuple(slice(0, h) for h in hi)]


def mul(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    """Product of two series with identical variables and orders."""
    a._check(b)
    # iterate over the sparser operand, add shifted copies of the other
    if np.count_nonzero(a.coeffs != 0) > np.count_nonzero(b.coeffs != 0):
        a, b = b, a
    shape = tuple(
        sa + sb - 1 if o is None else o + 1 for sa, sb, o in zip(a.shape, b.shape, a.orders)
    )
    out = np.zeros(shape, dtype=object)
    for idx in np.argwhere(a.coeffs != 0):
        idx = tuple(int(i) for i in idx)
        c = a.coeffs[idx]
        dst, src = [], []
        skip = False
        for i, sb, n in zip(idx, b.shape, shape):
            width = min(sb, n - i)
            if width <= 0:
                skip = True
                break
            dst.append(slice(i, i + width))
            src.append(slice(0, width))
        if skip:
            continue
        out[tuple(dst)] += c * b.coeffs[tuple(src)]
    return TruncSeries(out, a.vars, a.orders)


def pow_series(a: TruncSeries, k: int) -> TruncSeries:
    if k < 0:
        raise ValueError("negative exponent; use invert_unit")
    result = TruncSeries.constant(1, a.vars, a.orders)
    base = a
    while k:
        if k & 1:
            result = mul(result, base)
        k >>= 1
        if k:
            base = mul(base, base)
    return result


def truncate(a: TruncSeries, orders: Sequence[int | None]) -> TruncSeries:
    """Lower truncation orders (never raise them)."""
    orders = tuple(orders)
    for old, new in zip(a.orders, orders):
        if old is not None and (new is None or new > old):
            raise ValueError("truncation can only lower the order of a truncated variable")
    return TruncSeries(a.coeffs, a.vars, orders)


def invert_unit(a: TruncSeries) -> TruncSeries:
    """Multiplicative inverse of a unit in the truncated ring.

    Writes a = c0 (1 - u) and sums the geometric series in u by Horner's
    rule.  Every term of u must have positive degree in some truncated
    variable, otherwise the inverse is not a finite object in this ring.
    """
    c0 = a.coeffs[(0,) * len(a.vars)]
    if c0 == 0:
        raise NotAUnitError("constant term is zero")
    truncated = [k for k, o in enumerate(a.orders) if o is not None]
    terms = [idx for idx in np.argwhere(a.coeffs != 0) if any(idx)]
    for idx in terms:
        if not any(idx[k] for k in truncated):
            raise NotAUnitError("series has terms free of every truncated variable")
    inv_c0 = Fraction(1, c0) if c0 not in (1, -1) else c0
    u = TruncSeries.constant(1, a.vars, a.orders) - a * inv_c0
    # u**(K+1) vanishes once K exceeds order // (least exponent) along an axis
    # that every term of u involves; otherwise fall back to the total order
    steps = sum(a.orders[k] for k in truncated)
    for k in truncated:
        low = min((int(idx[k]) for idx in terms), default=0)
        if terms and low > 0:
            steps = min(steps, a.orders[k] // low)
    acc = TruncSeries.constant(1, a.vars, a.orders)
    for _ in range(steps):
        acc = mul(u, acc) + 1
    return acc * inv_c0


def poly_series(coeffs: Sequence[int], var: str = "q", order: int | None = None) -> TruncSeries:
    """Univariate convenience constructor."""
    return TruncSeries(list(coeffs) or [0], (var,), (order,))
