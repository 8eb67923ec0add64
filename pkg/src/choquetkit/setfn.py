"""Set-function algebra over a finite criteria set.

Coalitions are integer bitmasks (criterion ``i`` maps to bit ``i``), and
set functions are dense value tables of length ``2**n``.  Games are signed
set functions vanishing on the empty coalition; capacities additionally
take value 1 on the full coalition and are monotone under inclusion.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import (
    BadWeights,
    DimensionMismatch,
    EmptyGenerator,
    NotMonotone,
    NotNormalized,
    TooLarge,
)

MAX_CRITERIA = 16
ENUMERATION_LIMIT = 4


@dataclass(frozen=True)
class CriteriaSet:
    """An ordered set of distinct criterion identifiers."""

    ids: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "ids", tuple(self.ids))
        if not 1 <= len(self.ids) <= MAX_CRITERIA:
            raise ValueError(f"criteria count must be in 1..{MAX_CRITERIA}, got {len(self.ids)}")
        if any(not isinstance(c, str) or not c for c in self.ids):
            raise ValueError("criterion ids must be nonempty strings")
        if len(set(self.ids)) != len(self.ids):
            raise ValueError("criterion ids must be distinct")

    @property
    def n(self) -> int:
        return len(self.ids)

    def index(self, criterion_id: str) -> int:
        try:
            return self.ids.index(criterion_id)
        except ValueError:
            raise KeyError(f"unknown criterion id {criterion_id!r}") from None

    def coalition_of(self, members: Iterable[str]) -> int:
        """Bitmask of the coalition holding the given criterion ids."""
        bits = 0
        for cid in members:
            bit = 1 << self.index(cid)
            if bits & bit:
                raise ValueError(f"duplicate criterion id {cid!r} in coalition")
            bits |= bit
        return bits

    def members(self, bits: int) -> tuple[str, ...]:
        self.check_coalition(bits)
        return tuple(cid for i, cid in enumerate(self.ids) if bits >> i & 1)

    def coalition_key(self, bits: int) -> str:
        """Canonical JSON key: member ids joined by commas, ascending; "" for the empty coalition."""
        return ",".join(sorted(self.members(bits)))

    def parse_coalition_key(self, key: str) -> int:
        if key == "":
            return 0
        return self.coalition_of(key.split(","))

    def check_coalition(self, bits: int) -> None:
        if not 0 <= bits < 1 << self.n:
            raise ValueError(f"coalition 0x{bits:x} out of range for {self.n} criteria")


def iter_coalitions(n: int) -> Iterator[int]:
    """All coalitions of an n-criteria set in ascending bitmask order."""
    return iter(range(1 << n))


def iter_subsets(bits: int) -> Iterator[int]:
    """All subsets of a coalition, in ascending bitmask order."""
    sub = 0
    while True:
        yield sub
        if sub == bits:
            return
        sub = (sub - bits) & bits


def iter_covering_pairs(n: int) -> Iterator[tuple[int, int]]:
    """All pairs ``(a, a | {i})`` with ``i`` not in ``a``, ascending in ``(a, i)``."""
    for a in range(1 << n):
        for i in range(n):
            bit = 1 << i
            if not a & bit:
                yield a, a | bit


def _criteria_count(table_len: int) -> int:
    n = table_len.bit_length() - 1
    if table_len != 1 << n or not 1 <= n <= MAX_CRITERIA:
        raise ValueError(f"value table length {table_len} is not 2**n for n in 1..{MAX_CRITERIA}")
    return n


@dataclass(frozen=True)
class Game:
    """A signed set function with value 0 on the empty coalition."""

    values: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        _criteria_count(len(self.values))
        if self.values[0] != 0.0:
            raise ValueError(f"a game must vanish on the empty coalition, got {self.values[0]!r}")

    @property
    def n(self) -> int:
        return len(self.values).bit_length() - 1

    def __getitem__(self, bits: int) -> float:
        return self.values[bits]

    @property
    def full(self) -> int:
        return len(self.values) - 1


@dataclass(frozen=True)
class Capacity:
    """A normalized monotone game (fuzzy measure)."""

    game: Game

    @property
    def n(self) -> int:
        return self.game.n

    @property
    def values(self) -> tuple[float, ...]:
        return self.game.values

    def __getitem__(self, bits: int) -> float:
        return self.game.values[bits]

    @property
    def full(self) -> int:
        return self.game.full

    def is_zero_one(self) -> bool:
        return all(v in (0.0, 1.0) for v in self.values)


@dataclass(frozen=True)
class MobiusRep:
    """Mobius coefficients of a game, indexed by coalition bitmask."""

    coeffs: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", tuple(float(v) for v in self.coeffs))
        _criteria_count(len(self.coeffs))
        if self.coeffs[0] != 0.0:
            raise ValueError("Mobius coefficients must vanish on the empty coalition")

    @property
    def n(self) -> int:
        return len(self.coeffs).bit_length() - 1

    def __getitem__(self, bits: int) -> float:
        return self.coeffs[bits]


def make_capacity(n: int, values: Sequence[float], *, tol: float = 0.0) -> Capacity:
    """Validate a value table as a capacity.

    ``tol`` relaxes the checks for tables produced by floating-point
    solvers; literal constructions keep the default exact checks.
    Endpoint values within ``tol`` of 0 and 1 are snapped exactly.
    """
    values = [float(v) for v in values]
    if len(values) != 1 << n:
        raise DimensionMismatch(f"expected {1 << n} coalition values, got {len(values)}")
    full = (1 << n) - 1
    if abs(values[0]) > tol or abs(values[full] - 1.0) > tol:
        raise NotNormalized(
            f"capacity must have value 0 on the empty coalition and 1 on the full one, "
            f"got {values[0]!r} and {values[full]!r}"
        )
    values[0] = 0.0
    values[full] = 1.0
    violations = [
        (a, b) for a, b in iter_covering_pairs(n) if values[a] > values[b] + tol
    ]
    if violations:
        raise NotMonotone(
            f"capacity decreases on {len(violations)} covering pair(s)", violations
        )
    return Capacity(Game(tuple(values)))


def mobius(g: Game) -> MobiusRep:
    """Mobius transform: ``m(B) = sum over C subset of B of (-1)**(|B|-|C|) g(C)``.

    Computed with the in-place subset-sum recursion, O(n 2**n).
    """
    coeffs = list(g.values)
    size = len(coeffs)
    for i in range(g.n):
        bit = 1 << i
        for s in range(size):
            if s & bit:
                coeffs[s] -= coeffs[s ^ bit]
    return MobiusRep(tuple(coeffs))


def from_mobius(m: MobiusRep) -> Game:
    """Inverse Mobius (zeta) transform: ``g(A) = sum over B subset of A of m(B)``."""
    values = list(m.coeffs)
    size = len(values)
    for i in range(m.n):
        bit = 1 << i
        for s in range(size):
            if s & bit:
                values[s] += values[s ^ bit]
    return Game(tuple(values))


def unanimity(n: int, generator: int) -> Capacity:
    """The 0-1 capacity taking value 1 exactly on supersets of ``generator``."""
    if generator == 0:
        raise EmptyGenerator("the unanimity game of the empty coalition is not a capacity")
    if not 0 < generator < 1 << n:
        raise ValueError(f"coalition 0x{generator:x} out of range for {n} criteria")
    values = tuple(
        1.0 if bits & generator == generator else 0.0 for bits in iter_coalitions(n)
    )
    return Capacity(Game(values))


def linear_combine(terms: Sequence[tuple[float, Game]]) -> Game:
    """Pointwise linear combination of games sharing one criteria set."""
    if not terms:
        raise ValueError("at least one (coefficient, game) term is required")
    n = terms[0][1].n
    for _, g in terms:
        if g.n != n:
            raise DimensionMismatch(f"cannot combine games over {n} and {g.n} criteria")
    size = 1 << n
    values = [0.0] * size
    for coeff, g in terms:
        coeff = float(coeff)
        for s in range(size):
            values[s] += coeff * g.values[s]
    return Game(tuple(values))


def enumerate_zero_one_capacities(n: int) -> list[Capacity]:
    """All capacities with values in {0, 1}, by exhaustive filtering.

    Candidates assign 0/1 freely to the ``2**n - 2`` proper nonempty
    coalitions and are kept iff monotone.  Output order is lexicographic
    by the full value vector (ascending bitmask index).
    """
    if n > ENUMERATION_LIMIT:
        raise TooLarge(
            f"enumeration filters 2**(2**n - 2) candidates; n={n} exceeds the limit {ENUMERATION_LIMIT}"
        )
    size = 1 << n
    results = []
    for interior in itertools.product((0.0, 1.0), repeat=size - 2):
        values = (0.0, *interior, 1.0)
        if all(values[a] <= values[b] for a, b in iter_covering_pairs(n)):
            results.append(Capacity(Game(values)))
    return results


def additive_from_weights(weights: Sequence[float]) -> Capacity:
    """The additive capacity ``mu(A) = sum of w_i over i in A``."""
    weights = [float(w) for w in weights]
    if any(w < 0.0 for w in weights):
        raise BadWeights(f"weights must be nonnegative, got {weights}")
    total = math.fsum(weights)
    if abs(total - 1.0) > 1e-12:
        raise BadWeights(f"weights must sum to 1 within 1e-12, got {total!r}")
    n = len(weights)
    values = [
        math.fsum(weights[i] for i in range(n) if bits >> i & 1)
        for bits in iter_coalitions(n)
    ]
    values[-1] = 1.0
    return make_capacity(n, values, tol=1e-9)
