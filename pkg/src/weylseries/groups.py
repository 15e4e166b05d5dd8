"""Group descriptors, Cartan matrices and integral reflection representations.

A compact connected Lie group is described (up to the data the series need)
by its simple root-system factors and the rank of its central torus::

    >>> parse_descriptor("U(3)")
    GroupDescriptor(factors=(('A', 2),), central_rank=1)
    >>> str(parse_descriptor("SO(5) x G2 x T2"))
    'B2xG2xT2'

Descriptor grammar: tokens joined by ``x`` (or ``×``), each one of

* ``A<n>``, ``B<n>``, ``C<n>``, ``D<n>``, ``G2``, ``F4``, ``E6``, ``E7``, ``E8``
* ``T<k>``: a central torus of rank k
* ``SU(n)`` = A(n-1), ``Sp(n)`` = C(n), ``SO(2n+1)`` = B(n), ``SO(2n)`` = D(n),
  ``U(n)`` = A(n-1) x T1

B(1), C(1) and Sp(1), SO(3) reduce to A1; D2 and SO(4) reduce to A1 x A1;
SO(2) and U(1) are T1.  C(n) carries the same Weyl data as B(n) and is
normalised to B(n).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import lru_cache

EXCEPTIONAL_RANKS = {"G": 2, "F": 4, "E": (6, 7, 8)}
CLASSICAL = ("A", "B", "C", "D")


class DescriptorError(ValueError):
    """Malformed descriptor token or rank out of range."""


@dataclass(frozen=True)
class GroupDescriptor:
    factors: tuple[tuple[str, int], ...]
    central_rank: int = 0

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple((f, int(r)) for f, r in self.factors))
        for family, rank in self.factors:
            _check_factor(family, rank)
        if self.central_rank < 0:
            raise DescriptorError("central rank must be non-negative")

    @property
    def rank(self) -> int:
        return sum(r for _, r in self.factors) + self.central_rank

    @property
    def semisimple_rank(self) -> int:
        return sum(r for _, r in self.factors)

    def __str__(self) -> str:
        parts = [f"{f}{r}" for f, r in self.factors]
        if self.central_rank:
            parts.append(f"T{self.central_rank}")
        return "x".join(parts) if parts else "T0"

    def times(self, other: GroupDescriptor) -> GroupDescriptor:
        return GroupDescriptor(self.factors + other.factors, self.central_rank + other.central_rank)


def _check_factor(family: str, rank: int) -> None:
    if family == "A" and rank >= 1:
        return
    if family in ("B", "C") and rank >= 2:
        return
    if family == "D" and rank >= 3:
        return
    if family in ("G", "F") and rank == EXCEPTIONAL_RANKS[family]:
        return
    if family == "E" and rank in EXCEPTIONAL_RANKS["E"]:
        return
    raise DescriptorError(f"invalid factor {family}{rank}")


_FAMILY = re.compile(r"^([ABCDEFG])(\d+)$")
_TORUS = re.compile(r"^T(\d+)$")
_CLASSICAL_GROUP = re.compile(r"^(SU|Sp|SO|U)\((\d+)\)$")


def _normalise(family: str, rank: int) -> tuple[list[tuple[str, int]], int]:
    """Map a family/rank pair to canonical factors plus extra central rank."""
    if family in ("B", "C"):
        if rank == 1:
            return [("A", 1)], 0
        if rank < 1:
            raise DescriptorError(f"rank out of range: {family}{rank}")
        return [("B", rank)], 0
    if family == "D":
        if rank == 1:
            return [], 1
        if rank == 2:
            return [("A", 1), ("A", 1)], 0
    if rank < 1:
        raise DescriptorError(f"rank out of range: {family}{rank}")
    _check_factor(family, rank)
    return [(family, rank)], 0


def _parse_token(tok: str) -> tuple[list[tuple[str, int]], int]:
    m = _TORUS.match(tok)
    if m:
        return [], int(m.group(1))
    m = _FAMILY.match(tok)
    if m:
        family, rank = m.group(1), int(m.group(2))
        if family in "EFG" and not _valid_exceptional(family, rank):
            raise DescriptorError(f"rank out of range: {tok}")
        return _normalise(family, rank)
    m = _CLASSICAL_GROUP.match(tok)
    if m:
        name, n = m.group(1), int(m.group(2))
        if n < 1:
            raise DescriptorError(f"rank out of range: {tok}")
        if name == "U":
            return ([("A", n - 1)] if n > 1 else []), 1
        if name == "SU":
            if n < 2:
                raise DescriptorError(f"rank out of range: {tok} is trivial")
            return [("A", n - 1)], 0
        if name == "Sp":
            return _normalise("C", n)
        # SO(m)
        if n < 2:
            raise DescriptorError(f"rank out of range: {tok}")
        if n % 2:
            return _normalise("B", n // 2)
        return _normalise("D", n // 2)
    raise DescriptorError(f"malformed token {tok!r}")


def _valid_exceptional(family: str, rank: int) -> bool:
    allowed = EXCEPTIONAL_RANKS[family]
    return rank in allowed if isinstance(allowed, tuple) else rank == allowed


def parse_descriptor(text: str) -> GroupDescriptor:
    """Parse a descriptor string into a canonical GroupDescriptor."""
    if not isinstance(text, str) or not text.strip():
        raise DescriptorError("empty descriptor")
    tokens = [t.strip() for t in re.split(r"[x×]", text.replace(" ", ""))]
    if any(not t for t in tokens):
        raise DescriptorError(f"malformed descriptor {text!r}")
    factors: list[tuple[str, int]] = []
    central = 0
    for tok in tokens:
        f, c = _parse_token(tok)
        factors.extend(f)
        central += c
    return GroupDescriptor(tuple(factors), central)


# ---------------------------------------------------------------------------
# Cartan matrices and degrees


def cartan_matrix(family: str, rank: int) -> list[list[int]]:
    """Cartan matrix of a simple root system, Bourbaki node numbering (0-based)."""
    _check_factor(family, rank)
    n = rank
    C = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i, j, a=-1, b=-1):
        C[i][j], C[j][i] = a, b

    if family in ("A", "B", "C", "D"):
        chain = n - 1 if family == "D" else n
        for i in range(chain - 1):
            link(i, i + 1)
        if family == "B":
            C[n - 1][n - 2] = -2
        elif family == "C":
            C[n - 2][n - 1] = -2
        elif family == "D":
            link(n - 3, n - 1)
    elif family == "G":
        link(0, 1, -1, -3)
    elif family == "F":
        link(0, 1)
        link(1, 2, -2, -1)
        link(2, 3)
    elif family == "E":
        link(0, 2)
        link(1, 3)
        for i in range(2, n - 1):
            link(i, i + 1)
    return C


def family_degrees(family: str, rank: int) -> tuple[int, ...]:
    """Characteristic degrees of the Weyl group of one simple factor."""
    n = rank
    if family == "A":
        return tuple(range(2, n + 2))
    if family in ("B", "C"):
        return tuple(range(2, 2 * n + 1, 2))
    if family == "D":
        return tuple(sorted(list(range(2, 2 * n - 1, 2)) + [n]))
    table = {
        ("G", 2): (2, 6),
        ("F", 4): (2, 6, 8, 12),
        ("E", 6): (2, 5, 6, 8, 9, 12),
        ("E", 7): (2, 6, 8, 10, 12, 14, 18),
        ("E", 8): (2, 8, 12, 14, 18, 20, 24, 30),
    }
    return table[(family, n)]


def degrees(desc: GroupDescriptor) -> tuple[int, ...]:
    """Sorted characteristic degrees, one per dimension of the torus."""
    out: list[int] = [1] * desc.central_rank
    for family, rank in desc.factors:
        out.extend(family_degrees(family, rank))
    return tuple(sorted(out))


def weyl_order(desc: GroupDescriptor) -> int:
    return math.prod(degrees(desc))


def degree_bound(desc: GroupDescriptor, n: int) -> int:
    """Top cohomological degree of (G/T) x T^n: 2*sum(d_i - 1) + n*r."""
    return flag_dimension(desc) + n * desc.rank


def flag_dimension(desc: GroupDescriptor) -> int:
    """Real dimension of the flag manifold G/T."""
    return 2 * sum(d - 1 for d in degrees(desc))


# ---------------------------------------------------------------------------
# reflection representation

Matrix = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class ReflectionRep:
    """Integral action of W on the dual Cartan subalgebra.

    Coordinates are simple roots of each factor in order, followed by one
    coordinate per central circle on which every generator is the identity.
    """

    rank: int
    generators: tuple[Matrix, ...]
    degrees: tuple[int, ...]
    weyl_order: int
    descriptor: GroupDescriptor | None = None


def simple_reflections(C: list[list[int]]) -> list[Matrix]:
    """s_i(alpha_j) = alpha_j - C[j][i] alpha_i, as matrices acting on columns."""
    n = len(C)
    gens = []
    for i in range(n):
        M = [[int(r == c) for c in range(n)] for r in range(n)]
        for j in range(n):
            M[i][j] -= C[j][i]
        gens.append(tuple(tuple(row) for row in M))
    return gens


@lru_cache(maxsize=None)
def reflection_rep(desc: GroupDescriptor) -> ReflectionRep:
    r = desc.rank
    gens: list[Matrix] = []
    offset = 0
    for family, rank in desc.factors:
        for g in simple_reflections(cartan_matrix(family, rank)):
            M = [[int(a == b) for b in range(r)] for a in range(r)]
            for a in range(rank):
                for b in range(rank):
                    M[offset + a][offset + b] = g[a][b]
            gens.append(tuple(tuple(row) for row in M))
        offset += rank
    return ReflectionRep(r, tuple(gens), degrees(desc), weyl_order(desc), desc)


def is_involution(M: Matrix) -> bool:
    n = len(M)
    return all(
        sum(M[i][k] * M[k][j] for k in range(n)) == int(i == j) for i in range(n) for j in range(n)
    )
