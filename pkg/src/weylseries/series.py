"""Poincare and Hilbert-Poincare series of commuting-tuple spaces.

All series are evaluated as truncated power series in q to a fixed order
above the known degree bound.  The census-weighted sums stay integral; the
single division by |W| happens last and must be exact, and every coefficient
between the degree bound and the truncation order must vanish.  Either
failure raises :class:`SeriesConsistencyError`.
"""

from __future__ import annotations

import math
import os
import time
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

import numpy as np

from weylseries.census import CharPolyCensus, census_for, DEFAULT_ENUM_LIMIT
from weylseries.exactpoly import (
    IntPoly,
    NotDivisibleError,
    TruncSeries,
    dets_from_charpoly,
    invert_unit,
)
from weylseries.groups import (
    GroupDescriptor,
    degree_bound,
    degrees,
    flag_dimension,
    weyl_order,
)

DEFAULT_NCAP = 12


class SeriesConsistencyError(ArithmeticError):
    """A computed series contradicts integrality or the degree bound."""


@dataclass(frozen=True)
class Config:
    enum_limit: int = DEFAULT_ENUM_LIMIT
    margin: int | None = None  # None: 2 * max degree
    ncap: int = DEFAULT_NCAP

    @classmethod
    def from_env(cls, **overrides) -> Config:
        """Flag values (non-None overrides) beat environment variables beat defaults."""
        env = os.environ
        values = {
            "enum_limit": int(env.get("WEYLSERIES_ENUM_LIMIT", DEFAULT_ENUM_LIMIT)),
            "margin": int(env["WEYLSERIES_MARGIN"]) if "WEYLSERIES_MARGIN" in env else None,
            "ncap": int(env.get("WEYLSERIES_NCAP", DEFAULT_NCAP)),
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    def margin_for(self, desc: GroupDescriptor) -> int:
        if self.margin is not None:
            return self.margin
        return 2 * max(degrees(desc), default=1)


DEFAULT_CONFIG = Config()


def a_w(desc: GroupDescriptor) -> tuple[IntPoly, int]:
    """Numerator prod (1 - q^{2 d_i}) of A_W(q), and the divisor |W|."""
    num = IntPoly.one("q")
    for d in degrees(desc):
        num = num * (1 - IntPoly.monomial(2 * d, var="q"))
    return num, weyl_order(desc)


# ---------------------------------------------------------------------------
# shared machinery


@dataclass(frozen=True)
class _Entry:
    count: int
    plus: IntPoly  # det(1 + qw)
    minus: IntPoly  # det(1 - qw)
    q2: IntPoly  # det(1 - q^2 w)


@lru_cache(maxsize=64)
def _entries(census: CharPolyCensus) -> tuple[_Entry, ...]:
    out = []
    for chi, count in census:
        plus, minus, q2 = dets_from_charpoly(chi)
        out.append(_Entry(count, plus, minus, q2))
    return tuple(out)


@lru_cache(maxsize=512)
def _inverse_q2(q2: IntPoly, D: int) -> TruncSeries:
    return invert_unit(TruncSeries.from_poly(q2, ("q",), (D,)))


def _resolve(desc: GroupDescriptor, census: CharPolyCensus | None, config: Config) -> CharPolyCensus:
    if census is None:
        census = census_for(desc, limit=config.enum_limit)
    if census.rank != desc.rank or census.total != weyl_order(desc):
        raise ValueError(
            f"census (rank {census.rank}, total {census.total}) does not match {desc} "
            f"(rank {desc.rank}, |W| {weyl_order(desc)})"
        )
    return census


def _embed(p: IntPoly, vars, orders, axis: str) -> TruncSeries:
    return TruncSeries.from_poly(p, vars, orders, axis=axis)


def _divided(acc: TruncSeries, desc: GroupDescriptor, what: str) -> TruncSeries:
    """A_W(q) * acc, with the division by |W| checked exact."""
    num, order = a_w(desc)
    total = acc * _embed(num, acc.vars, acc.orders, "q")
    try:
        return total.scale_down(order)
    except NotDivisibleError as exc:
        raise SeriesConsistencyError(f"{what}: non-integral coefficient after division by |W|: {exc}") from exc


def _finish(acc: TruncSeries, desc: GroupDescriptor, q_bound: int, what: str) -> TruncSeries:
    """Multiply by A_W(q) and verify that the band above ``q_bound`` vanishes."""
    total = _divided(acc, desc, what)
    qa = total.vars.index("q")
    for idx, c in _nonzero(total):
        if idx[qa] > q_bound:
            raise SeriesConsistencyError(
                f"{what}: nonzero coefficient {c} at q^{idx[qa]} beyond the degree bound {q_bound}"
            )
    return total.restrict(q=q_bound).to_polynomial()


def _nonzero(s: TruncSeries):
    for idx in np.argwhere(s.coeffs != 0):
        idx = tuple(int(i) for i in idx)
        yield idx, s.coeffs[idx]


def _weighted_q_sum(
    desc: GroupDescriptor,
    census: CharPolyCensus,
    D: int,
    s_part: Callable[[_Entry], IntPoly] | None,
    q_part: Callable[[_Entry], IntPoly] | None = None,
) -> TruncSeries:
    """sum_w count * s_part(w)(s) * q_part(w)(q) / det(1 - q^2 w), truncated in q at D."""
    vars_ = ("q",) if s_part is None else ("q", "s")
    orders = (D,) if s_part is None else (D, None)
    acc = TruncSeries.zero(vars_, orders)
    for e in _entries(census):
        inv = _inverse_q2(e.q2, D)
        if q_part is not None:
            inv = inv * TruncSeries.from_poly(q_part(e), ("q",), (D,))
        if s_part is None:
            term = inv
        else:
            s_coeffs = np.array(s_part(e).coeffs or (0,), dtype=object)
            term = TruncSeries(np.multiply.outer(inv.coeffs, s_coeffs), vars_, orders)
        acc = acc + term * e.count
    return acc


def _check_n(n: int, config: Config, name: str = "n") -> None:
    if n < 0:
        raise ValueError(f"{name} must be non-negative")
    if n > config.ncap:
        raise ValueError(f"{name} = {n} exceeds the cap {config.ncap} (--ncap / WEYLSERIES_NCAP)")


# ---------------------------------------------------------------------------
# series


def poincare_hom(
    desc: GroupDescriptor, n: int, census: CharPolyCensus | None = None, config: Config = DEFAULT_CONFIG
) -> IntPoly:
    """Poincare polynomial of the identity component of Hom(Z^n, G)."""
    _check_n(n, config)
    census = _resolve(desc, census, config)
    bound = degree_bound(desc, n)
    D = bound + config.margin_for(desc)
    acc = _weighted_q_sum(desc, census, D, None, lambda e: e.plus**n)
    return _finish(acc, desc, bound, f"P(Hom(Z^{n},{desc}))").to_intpoly()


def poincare_series_to(
    desc: GroupDescriptor, n: int, D: int, census: CharPolyCensus | None = None, config: Config = DEFAULT_CONFIG
) -> TruncSeries:
    """The Poincare series of Hom(Z^n, G)_1 as a q-series truncated at D.

    No degree-bound check is applied, so the coefficients above the bound
    can be inspected directly.
    """
    census = _resolve(desc, census, config)
    acc = _weighted_q_sum(desc, census, D, None, lambda e: e.plus**n)
    return _divided(acc, desc, f"P(Hom(Z^{n},{desc}))")


def _binomial_block(n: int) -> Callable[[_Entry], IntPoly]:
    def block(e: _Entry) -> IntPoly:
        x = e.plus.relabel("s") - 1
        total = IntPoly((), "s")
        for k in range(n + 1):
            total = total + math.comb(n, k) * x**k
        return total

    return block


def hilbert_hom(
    desc: GroupDescriptor, n: int, census: CharPolyCensus | None = None, config: Config = DEFAULT_CONFIG
) -> TruncSeries:
    """Bigraded series: coefficient of q^i s^j is rank [H^i(G/T) x H^j(T^n)]^W."""
    _check_n(n, config)
    census = _resolve(desc, census, config)
    bound = flag_dimension(desc)
    D = bound + config.margin_for(desc)
    acc = _weighted_q_sum(desc, census, D, _binomial_block(n))
    return _finish(acc, desc, bound, f"P(Hom(Z^{n},{desc});q,s)")


def reduced_hom_hat(
    desc: GroupDescriptor, m: int, census: CharPolyCensus | None = None, config: Config = DEFAULT_CONFIG
) -> TruncSeries:
    """Reduced bigraded series of the smash-type summand Hom-hat(Z^m, G)_1.

    For m = 0 this is the constant 1.
    """
    _check_n(m, config, "m")
    census = _resolve(desc, census, config)
    bound = flag_dimension(desc)
    D = bound + config.margin_for(desc)
    acc = _weighted_q_sum(desc, census, D, lambda e: (e.plus.relabel("s") - 1) ** m)
    return _finish(acc, desc, bound, f"P(Hom-hat(Z^{m},{desc});q,s)")


def comm_series(
    desc: GroupDescriptor, m_max: int, census: CharPolyCensus | None = None, config: Config = DEFAULT_CONFIG
) -> list[TruncSeries]:
    """t-coefficients 0..m_max of the trigraded series of Comm(G)_1.

    Expands 1 / (det(1 - q^2 w) (1 - t (det(1 + sw) - 1))) as a series
    truncated in q and t, and returns the (q, s) polynomial multiplying each
    power of t.
    """
    _check_n(m_max, config, "m_max")
    census = _resolve(desc, census, config)
    bound = flag_dimension(desc)
    D = bound + config.margin_for(desc)
    vars_, orders = ("q", "s", "t"), (D, None, m_max)
    st_vars, st_orders = ("s", "t"), (None, m_max)
    t = TruncSeries.from_poly(IntPoly((0, 1), "t"), st_vars, st_orders)
    acc = TruncSeries.zero(vars_, orders)
    for e in _entries(census):
        x = TruncSeries.from_poly(e.plus.relabel("s") - 1, st_vars, st_orders)
        geometric = invert_unit(1 - t * x)
        inv = _inverse_q2(e.q2, D)
        # the q-part and the (s, t)-part are independent factors
        term = TruncSeries(np.multiply.outer(inv.coeffs, geometric.coeffs), vars_, orders)
        acc = acc + term * e.count
    total = _finish(acc, desc, bound, f"P(Comm({desc});q,s,t)")
    return [total.coefficient("t", m).to_polynomial() for m in range(m_max + 1)]


def xm_series(
    desc: GroupDescriptor,
    nilpotency: int,
    m_max: int,
    census: CharPolyCensus | None = None,
    config: Config = DEFAULT_CONFIG,
) -> list[TruncSeries]:
    """Trigraded series of X(m, G)_1 for nilpotency class m >= 2.

    X(m, G)_1 and Comm(G)_1 become homotopy equivalent after one suspension
    for every m >= 2, so the series coincide.
    """
    if nilpotency < 2:
        raise ValueError(f"nilpotency class must be >= 2, got {nilpotency}")
    return comm_series(desc, m_max, census, config)


def lie_group_poincare(desc: GroupDescriptor) -> IntPoly:
    """prod (1 + q^{2 d_i - 1}): the Poincare polynomial of G itself."""
    p = IntPoly.one("q")
    for d in degrees(desc):
        p = p * (1 + IntPoly.monomial(2 * d - 1, var="q"))
    return p


def specialise(hilbert: TruncSeries) -> IntPoly:
    """Collapse a (q, s) series to q by s := q."""
    return hilbert.substitute_equal("q", "s").to_polynomial().to_intpoly()


# ---------------------------------------------------------------------------
# diagnostics and reports


@dataclass
class Diagnostic:
    name: str
    expected: object
    actual: object
    passed: bool

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.name}: expected {self.expected}, got {self.actual}"


def _check(name, expected, actual) -> Diagnostic:
    return Diagnostic(name, expected, actual, expected == actual)


def diagnostics(desc: GroupDescriptor, n: int, P: IntPoly) -> list[Diagnostic]:
    """Structural identities every Poincare polynomial of Hom(Z^n, G)_1 satisfies."""
    nr = n * desc.rank
    even = sum(P.coeffs[0::2])
    odd = sum(P.coeffs[1::2])
    out = [
        _check("constant-term", 1, P[0]),
        _check("total-rank P(1)", 2**nr, P(1)),
        _check("euler-characteristic P(-1)", 0 if nr else 1, P(-1)),
        _check("first-betti q^1", n * desc.central_rank, P[1]),
        _check("even-sum", 2 ** (nr - 1) if nr else 1, even),
        _check("odd-sum", 2 ** (nr - 1) if nr else 0, odd),
        _check("non-negative", True, all(c >= 0 for c in P.coeffs)),
        Diagnostic("degree-bound", f"<= {degree_bound(desc, n)}", P.degree, P.degree <= degree_bound(desc, n)),
    ]
    if n % 2:
        out.append(_check("palindromic (n odd)", True, P.is_palindromic()))
    if n == 1:
        out.append(_check("equals P(G)", str(lie_group_poincare(desc)), str(P)))
    return out


def _nonneg(s: TruncSeries) -> bool:
    return all(c >= 0 for _, c in _nonzero(s))


@dataclass
class SeriesReport:
    kind: str
    descriptor: GroupDescriptor
    params: dict
    payload: object
    diagnostics: list[Diagnostic] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return all(d.passed for d in self.diagnostics)


def hom_report(desc, n, census=None, config: Config = DEFAULT_CONFIG) -> SeriesReport:
    t0 = time.perf_counter()
    census = _resolve(desc, census, config)
    P = poincare_hom(desc, n, census, config)
    rep = SeriesReport("poincare", desc, {"n": n}, P, diagnostics(desc, n, P))
    rep.notes.append(
        "also the Poincare polynomial of Hom(F_n/Gamma^m, G)_1 for every nilpotency class m >= 2"
    )
    rep.seconds = time.perf_counter() - t0
    return rep


def hilbert_report(desc, n, census=None, config: Config = DEFAULT_CONFIG) -> SeriesReport:
    t0 = time.perf_counter()
    census = _resolve(desc, census, config)
    H = hilbert_hom(desc, n, census, config)
    P = poincare_hom(desc, n, census, config)
    parts = TruncSeries.zero(("q", "s"))
    for k in range(n + 1):
        parts = parts + reduced_hom_hat(desc, k, census, config) * math.comb(n, k)
    diags = [
        _check("s:=q recovers P(q)", str(P), str(specialise(H))),
        _check("binomial reassembly of Hom-hat", True, parts.to_polynomial() == H),
        _check("s^0 block equals 1", "1", str(H.coefficient("s", 0).to_polynomial().to_intpoly())),
        Diagnostic("q-degree", f"<= {flag_dimension(desc)}", H.degree("q"), H.degree("q") <= flag_dimension(desc)),
        Diagnostic("s-degree", f"<= {n * desc.rank}", H.degree("s"), H.degree("s") <= n * desc.rank),
        _check("non-negative", True, _nonneg(H)),
    ]
    rep = SeriesReport("hilbert", desc, {"n": n}, H, diags)
    rep.seconds = time.perf_counter() - t0
    return rep


def homhat_report(desc, m, census=None, config: Config = DEFAULT_CONFIG) -> SeriesReport:
    t0 = time.perf_counter()
    census = _resolve(desc, census, config)
    H = reduced_hom_hat(desc, m, census, config)
    diags = [
        _check("non-negative", True, _nonneg(H)),
        Diagnostic("s-degree", f"<= {m * desc.rank}", H.degree("s"), H.degree("s") <= m * desc.rank),
    ]
    if m == 0:
        diags.append(_check("m=0 is the constant 1", "1", str(specialise(H))))
    if m == 1:
        diags.append(_check("s:=q equals P(G) - 1", str(lie_group_poincare(desc) - 1), str(specialise(H))))
    rep = SeriesReport("homhat", desc, {"m": m}, H, diags)
    rep.seconds = time.perf_counter() - t0
    return rep


def comm_report(desc, m_max, census=None, nilpotency: int | None = None, config: Config = DEFAULT_CONFIG) -> SeriesReport:
    t0 = time.perf_counter()
    census = _resolve(desc, census, config)
    if nilpotency is None:
        coeffs = comm_series(desc, m_max, census, config)
        kind, params = "comm", {"tmax": m_max}
    else:
        coeffs = xm_series(desc, nilpotency, m_max, census, config)
        kind, params = "xm", {"tmax": m_max, "nilpotency": nilpotency}
    diags = [_check("t^0 coefficient is 1", "1", str(specialise(coeffs[0])))]
    for m, c in enumerate(coeffs):
        diags.append(_check(f"t^{m} equals Hom-hat(Z^{m})", True, c == reduced_hom_hat(desc, m, census, config)))
    if m_max >= 1:
        diags.append(_check("t^1 at s:=q equals P(G) - 1", str(lie_group_poincare(desc) - 1), str(specialise(coeffs[1]))))
    diags.append(_check("non-negative", True, all(_nonneg(c) for c in coeffs)))
    rep = SeriesReport(kind, desc, params, coeffs, diags)
    if nilpotency is not None:
        rep.notes.append(
            f"X({nilpotency},G)_1 shares the trigraded series of Comm(G)_1 (stably equivalent for all m >= 2)"
        )
    rep.seconds = time.perf_counter() - t0
    return rep
