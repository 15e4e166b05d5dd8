"""Characteristic-polynomial census of a Weyl group acting on t*.

Every series formula sums functions of det(1 - qw) and det(1 + qw), which only
depend on the characteristic polynomial of w.  A census therefore bins the
elements of W by characteristic polynomial and records how many fall in each
bin.
"""

from __future__ import annotations

import json
import math
import os
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Iterator, Mapping

import numpy as np

from weylseries.exactpoly import (
    IntPoly,
    TruncSeries,
    batch_charpoly,
    dets_from_charpoly,
    exact_divide,
    invert_unit,
)
from weylseries.groups import (
    GroupDescriptor,
    ReflectionRep,
    degrees as group_degrees,
    parse_descriptor,
    reflection_rep,
)

FORMAT_VERSION = 1
DEFAULT_ENUM_LIMIT = 10**7


class EnumerationLimitError(RuntimeError):
    """The group is too large to enumerate under the configured limit."""


class CensusFormatError(ValueError):
    """A census file could not be parsed or failed validation."""


@dataclass(frozen=True)
class CharPolyCensus:
    """Immutable multiset {char poly of w on t*: number of w}.

    ``entries`` is kept sorted by coefficient vector so that equality,
    hashing and serialisation are canonical.
    """

    rank: int
    entries: tuple[tuple[IntPoly, int], ...]

    def __post_init__(self):
        merged: Counter = Counter()
        for poly, count in self.entries:
            poly = IntPoly(poly.coeffs, "t") if isinstance(poly, IntPoly) else IntPoly(poly, "t")
            if poly.degree != self.rank:
                raise ValueError(f"char poly {poly} has degree != rank {self.rank}")
            merged[poly] += int(count)
        canon = tuple(sorted(((p, c) for p, c in merged.items() if c), key=lambda e: list(e[0].coeffs)))
        object.__setattr__(self, "entries", canon)

    @classmethod
    def from_mapping(cls, rank: int, counts: Mapping) -> CharPolyCensus:
        return cls(rank, tuple(counts.items()))

    @property
    def total(self) -> int:
        return sum(c for _, c in self.entries)

    def as_dict(self) -> dict[IntPoly, int]:
        return dict(self.entries)

    def __iter__(self) -> Iterator[tuple[IntPoly, int]]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)


def trivial_census(rank: int) -> CharPolyCensus:
    """Census of the trivial group on a rank-``rank`` torus: {(t-1)^rank: 1}."""
    return CharPolyCensus(rank, ((IntPoly((-1, 1)) ** rank, 1),))


# ---------------------------------------------------------------------------
# enumeration


def _limit(limit: int | None) -> int:
    if limit is not None:
        return limit
    return int(os.environ.get("WEYLSERIES_ENUM_LIMIT", DEFAULT_ENUM_LIMIT))


def _hint(order: int, limit: int) -> str:
    return (
        f"|W| = {order} exceeds the enumeration limit {limit}; supply a census file "
        f"(load_census / --census FILE) or raise the limit (--enum-limit / WEYLSERIES_ENUM_LIMIT)"
    )


def enumerate_census(rep: ReflectionRep, limit: int | None = None) -> CharPolyCensus:
    """Enumerate W from its simple reflections and bin by char poly.

    The closure is built one Coxeter length at a time: left-multiplying an
    element of length L by a simple reflection lands in length L-1 or L+1,
    so the new layer is the set of products minus the previous layer.
    Elements are deduplicated by their row-major integer entries.
    """
    limit = _limit(limit)
    if rep.weyl_order > limit:
        raise EnumerationLimitError(_hint(rep.weyl_order, limit))
    r = rep.rank
    if r == 0:
        return CharPolyCensus(0, ((IntPoly((1,)), 1),))
    gens = np.array(rep.generators, dtype=np.int64).reshape(-1, r, r)
    ident = np.eye(r, dtype=np.int64)[None]
    counts: Counter = Counter()
    _bin(ident, counts)
    seen = 1
    prev = np.zeros((0, r, r), dtype=np.int64)
    layer = ident
    # a reflection differs from the identity in few rows; only those change
    moved = [np.flatnonzero((g != np.eye(r, dtype=np.int64)).any(axis=1)) for g in gens]
    while len(layer) and len(gens):
        parts = []
        for g, rows in zip(gens, moved):
            prod = layer.copy()
            prod[:, rows, :] = np.matmul(g[rows], layer)
            parts.append(prod)
        cand = _unique(np.concatenate(parts))
        cand = _difference(cand, prev)
        prev, layer = layer, cand
        seen += len(layer)
        if seen > rep.weyl_order:
            raise RuntimeError("enumeration exceeded |W|: generators are not a Coxeter system")
        _bin(layer, counts)
    census = CharPolyCensus(r, tuple(counts.items()))
    if census.total != rep.weyl_order:
        raise RuntimeError(f"enumerated {census.total} elements, expected {rep.weyl_order}")
    return census


def _keys(mats: np.ndarray) -> np.ndarray:
    flat = np.ascontiguousarray(mats.reshape(len(mats), -1).astype(np.int8))
    return flat.view(np.dtype((np.void, flat.shape[1]))).ravel()


def _unique(mats: np.ndarray) -> np.ndarray:
    if np.abs(mats).max(initial=0) > 127:
        raise OverflowError("matrix entries exceed int8 key range")
    _, idx = np.unique(_keys(mats), return_index=True)
    return mats[np.sort(idx)]


def _difference(mats: np.ndarray, drop: np.ndarray) -> np.ndarray:
    if not len(drop) or not len(mats):
        return mats
    keep = ~np.isin(_keys(mats), _keys(drop))
    return mats[keep]


def _bin(mats: np.ndarray, counts: Counter) -> None:
    polys = batch_charpoly(mats)
    uniq, mult = np.unique(polys, axis=0, return_counts=True)
    for row, c in zip(uniq, mult):
        counts[IntPoly(tuple(int(x) for x in row))] += int(c)


# ---------------------------------------------------------------------------
# combinatorial fast paths


def partitions(n: int, max_part: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of n as non-increasing tuples."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for k in range(min(n, max_part), 0, -1):
        for rest in partitions(n - k, k):
            yield (k,) + rest


def _z(parts: tuple[int, ...], scale: int = 1) -> int:
    """Centraliser order prod_i (scale*i)^{a_i} a_i! for part multiplicities a_i."""
    z = 1
    for i, a in Counter(parts).items():
        z *= (scale * i) ** a * math.factorial(a)
    return z


_T = IntPoly((0, 1))


def combinatorial_census(family: str, rank: int) -> CharPolyCensus:
    """Census of a classical Weyl group from cycle-type combinatorics.

    A(n-1): permutations of cycle type lambda act on the reflection
    representation with char poly prod (t^l - 1) / (t - 1).
    B(n)/C(n): signed permutations with positive cycles lambda and negative
    cycles mu contribute prod (t^l - 1) prod (t^m + 1).
    D(n): the B(n) census restricted to an even number of negative cycles.
    """
    if family == "A":
        n = rank + 1
        counts: Counter = Counter()
        for lam in partitions(n):
            chi = IntPoly.one()
            for part in lam:
                chi = chi * (_T**part - 1)
            counts[exact_divide(chi, _T - 1)] += math.factorial(n) // _z(lam)
        return CharPolyCensus(rank, tuple(counts.items()))
    if family in ("B", "C", "D"):
        n = rank
        order = math.factorial(n) * 2**n
        counts = Counter()
        for k in range(n + 1):
            for lam in partitions(k):
                for mu in partitions(n - k):
                    if family == "D" and len(mu) % 2:
                        continue
                    chi = IntPoly.one()
                    for part in lam:
                        chi = chi * (_T**part - 1)
                    for part in mu:
                        chi = chi * (_T**part + 1)
                    counts[chi] += order // (_z(lam, 2) * _z(mu, 2))
        return CharPolyCensus(rank, tuple(counts.items()))
    raise ValueError(f"combinatorial_census: family must be classical, got {family!r}")


def product_census(c1: CharPolyCensus, c2: CharPolyCensus) -> CharPolyCensus:
    """Census of W1 x W2 acting on the direct sum of the two spaces."""
    counts: Counter = Counter()
    for p1, n1 in c1:
        for p2, n2 in c2:
            counts[p1 * p2] += n1 * n2
    return CharPolyCensus(c1.rank + c2.rank, tuple(counts.items()))


def factor_census(family: str, rank: int, method: str = "auto", limit: int | None = None) -> CharPolyCensus:
    if method == "auto":
        method = "combinatorial" if family in ("A", "B", "C", "D") else "enumerate"
    return _cached_factor_census(family, rank, method, _limit(limit))


@lru_cache(maxsize=None)
def _cached_factor_census(family: str, rank: int, method: str, limit: int) -> CharPolyCensus:
    if method == "combinatorial":
        return combinatorial_census(family, rank)
    return enumerate_census(reflection_rep(GroupDescriptor(((family, rank),))), limit)


def census_for(desc: GroupDescriptor, method: str = "auto", limit: int | None = None) -> CharPolyCensus:
    """Census of a descriptor, assembled factor by factor.

    ``method`` is "auto" (combinatorial for classical factors, enumeration
    for exceptional ones), "combinatorial" or "enumerate".
    """
    limit = _limit(limit)
    census = trivial_census(desc.central_rank)
    for family, rank in desc.factors:
        if method == "combinatorial" and family not in ("A", "B", "C", "D"):
            part = factor_census(family, rank, "enumerate", limit)
        else:
            part = factor_census(family, rank, method, limit)
        census = product_census(part, census)
    return census


# ---------------------------------------------------------------------------
# persistence


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def dump_census(c: CharPolyCensus, desc: GroupDescriptor) -> str:
    header = {
        "format_version": FORMAT_VERSION,
        "descriptor": str(desc),
        "rank": c.rank,
        "weyl_order": str(math.prod(group_degrees(desc))),
        "degrees": list(group_degrees(desc)),
    }
    lines = [_dumps(header)]
    for poly, count in c.entries:
        lines.append(_dumps({"charpoly": list(poly.coeffs), "count": str(count)}))
    lines.append(_dumps({"checksum": str(c.total)}))
    return "\n".join(lines) + "\n"


def save_census(c: CharPolyCensus, path, desc: GroupDescriptor) -> None:
    Path(path).write_text(dump_census(c, desc), encoding="utf-8")


def parse_census(text: str) -> tuple[CharPolyCensus, GroupDescriptor]:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if len(lines) < 2:
        raise CensusFormatError("census file needs a header and a checksum line")
    try:
        header = json.loads(lines[0])
        body = [json.loads(ln) for ln in lines[1:-1]]
        trailer = json.loads(lines[-1])
        if header.get("format_version") != FORMAT_VERSION:
            raise CensusFormatError(f"unsupported format_version {header.get('format_version')!r}")
        desc = parse_descriptor(header["descriptor"])
        rank = int(header["rank"])
        declared = int(header["weyl_order"])
        entries = tuple((IntPoly(tuple(int(x) for x in e["charpoly"])), int(e["count"])) for e in body)
        checksum = int(trailer["checksum"])
    except CensusFormatError:
        raise
    except (ValueError, KeyError, TypeError) as exc:
        raise CensusFormatError(f"malformed census file: {exc}") from exc
    coeff_lists = [list(p.coeffs) for p, _ in entries]
    if coeff_lists != sorted(coeff_lists) or len(set(map(tuple, coeff_lists))) != len(coeff_lists):
        raise CensusFormatError("census entries must be unique and sorted by coefficient vector")
    if rank != desc.rank:
        raise CensusFormatError(f"rank {rank} does not match descriptor {desc} (rank {desc.rank})")
    for poly, _ in entries:
        if poly.degree != rank:
            raise CensusFormatError(f"char poly {list(poly.coeffs)} has degree != rank {rank}")
    census = CharPolyCensus(rank, entries)
    if checksum != census.total:
        raise CensusFormatError(f"checksum {checksum} != sum of counts {census.total}")
    if declared != math.prod(group_degrees(desc)):
        raise CensusFormatError(f"declared weyl_order {declared} != product of degrees of {desc}")
    if census.total != declared:
        raise CensusFormatError(f"sum of counts {census.total} != declared weyl_order {declared}")
    return census, desc


def read_census(path, desc: GroupDescriptor | None = None) -> tuple[CharPolyCensus, GroupDescriptor]:
    """Read and fully validate a census file; returns the census and its group.

    When ``desc`` is given the file must carry the same Weyl data (rank and
    degrees), and validation runs against ``desc``.
    """
    census, file_desc = parse_census(Path(path).read_text(encoding="utf-8"))
    if desc is not None and (desc.rank != file_desc.rank or group_degrees(desc) != group_degrees(file_desc)):
        raise CensusFormatError(f"census file is for {file_desc}, not {desc}")
    desc = desc or file_desc
    report = validate_census(census, desc)
    if not report.passed:
        raise CensusFormatError(f"census failed validation: {report.first_failure}")
    return census, desc


def load_census(path, desc: GroupDescriptor | None = None) -> CharPolyCensus:
    """Read a census file and re-validate it, including the Molien identity."""
    return read_census(path, desc)[0]


# ---------------------------------------------------------------------------
# validation


@dataclass
class CensusCheck:
    name: str
    passed: bool
    expected: object = None
    actual: object = None
    degree: int | None = None

    def __str__(self) -> str:
        where = f" at q^{self.degree}" if self.degree is not None else ""
        return f"{self.name}: expected {self.expected}, got {self.actual}{where}"


@dataclass
class CensusReport:
    descriptor: str
    truncation: int
    checks: list[CensusCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def first_failure(self) -> CensusCheck | None:
        return next((c for c in self.checks if not c.passed), None)


def molien_defect(c: CharPolyCensus, degs, D: int) -> int | None:
    """Lowest q-degree <= D where sum count/det(1-qw) != |W| prod 1/(1-q^d), else None."""
    order = math.prod(degs)
    lhs = TruncSeries.zero(("q",), (D,))
    for chi, count in c:
        _, minus, _ = dets_from_charpoly(chi)
        lhs = lhs + invert_unit(TruncSeries.from_poly(minus, ("q",), (D,))) * count
    rhs = TruncSeries.constant(order, ("q",), (D,))
    for d in degs:
        rhs = rhs * invert_unit(TruncSeries.from_poly(1 - IntPoly.monomial(d, var="q"), ("q",), (D,)))
    for k in range(D + 1):
        if lhs[k] != rhs[k]:
            return k
    return None


def validate_census(c: CharPolyCensus, desc: GroupDescriptor, D: int | None = None) -> CensusReport:
    """Check order, shape invariants and the Molien identity to q^D."""
    if c.rank != desc.rank:
        raise ValueError(f"census rank {c.rank} != descriptor rank {desc.rank}")
    degs = group_degrees(desc)
    if D is None:
        D = 2 * max(degs, default=1) + 2
    order = math.prod(degs)
    report = CensusReport(str(desc), D)
    report.checks.append(CensusCheck("order", c.total == order, order, c.total))
    bad = [p for p, _ in c if not p.is_monic() or abs(p[0]) != 1]
    report.checks.append(CensusCheck("monic-unit-constant", not bad, [], [list(p.coeffs) for p in bad]))
    ident = IntPoly((-1, 1)) ** c.rank
    n_ident = c.as_dict().get(ident, 0)
    report.checks.append(CensusCheck("identity-count", n_ident == 1, 1, n_ident))
    k = molien_defect(c, degs, D) if not bad else 0
    report.checks.append(CensusCheck("molien", k is None, "agreement", "agreement" if k is None else "mismatch", k))
    return report


def molien_series(c: CharPolyCensus, D: int) -> list[Fraction]:
    """(1/|W|) sum_w 1/det(1 - qw) to q^D, from the census."""
    acc = TruncSeries.zero(("q",), (D,))
    for chi, count in c:
        _, minus, _ = dets_from_charpoly(chi)
        acc = acc + invert_unit(TruncSeries.from_poly(minus, ("q",), (D,))) * count
    return [Fraction(acc[k], c.total) for k in range(D + 1)]
