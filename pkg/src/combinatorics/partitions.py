"""Set partitions, pairings and integer partitions."""

from __future__ import annotations

from collections.abc import Hashable, Iterable, Iterator, Sequence
from dataclasses import dataclass, field

from src.exceptions import CombinatoricsError, DomainMismatchError, InvalidPermutationError

from .signed import SignedDomain, SignedPermutation


@dataclass(frozen=True)
class IntegerPartition:
    """Weakly decreasing positive parts."""

    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(p <= 0 for p in self.parts):
            raise CombinatoricsError(f"partition parts must be positive: {self.parts}")
        if list(self.parts) != sorted(self.parts, reverse=True):
            object.__setattr__(self, "parts", tuple(sorted(self.parts, reverse=True)))

    @classmethod
    def of(cls, sizes: Iterable[int]) -> IntegerPartition:
        return cls(tuple(sorted(sizes, reverse=True)))

    @property
    def weight(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.parts)) + "]"


def integer_partitions(weight: int, max_part: int | None = None) -> Iterator[IntegerPartition]:
    """All partitions of ``weight`` in reverse lexicographic order."""
    if weight == 0:
        yield IntegerPartition(())
        return
    top = weight if max_part is None else min(max_part, weight)
    for first in range(top, 0, -1):
        for rest in integer_partitions(weight - first, first):
            yield IntegerPartition((first, *rest.parts))


@dataclass(frozen=True)
class SetPartition:
    """Disjoint nonempty blocks covering a finite domain."""

    blocks: frozenset[frozenset[Hashable]]

    def __post_init__(self) -> None:
        seen: set[Hashable] = set()
        for block in self.blocks:
            if not block:
                raise CombinatoricsError("set partition blocks must be nonempty")
            if seen & block:
                raise CombinatoricsError("set partition blocks must be disjoint")
            seen |= block

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[Hashable]]) -> SetPartition:
        return cls(frozenset(frozenset(b) for b in blocks))

    @classmethod
    def from_permutation(cls, perm: SignedPermutation) -> SetPartition:
        """Π(π): the orbits of π."""
        return cls(frozenset(perm.orbits()))

    @property
    def domain(self) -> frozenset[Hashable]:
        return frozenset().union(*self.blocks)

    def __len__(self) -> int:
        return len(self.blocks)

    def block_of(self, x: Hashable) -> frozenset[Hashable]:
        for block in self.blocks:
            if x in block:
                return block
        raise DomainMismatchError(f"{x!r} is not in the partition's domain")

    def block_sizes(self) -> IntegerPartition:
        return IntegerPartition.of(len(b) for b in self.blocks)

    def refines(self, other: SetPartition) -> bool:
        """self ≤ other in the refinement order."""
        return all(any(b <= c for c in other.blocks) for b in self.blocks)

    def sorted_blocks(self) -> list[list[Hashable]]:
        return sorted((sorted(b, key=_sort_key) for b in self.blocks), key=lambda b: _sort_key(b[0]))


def _sort_key(x: Hashable) -> tuple[int, int, int, str]:
    """Signed integers by absolute value, plus before minus; anything else after them, by text."""
    if isinstance(x, int):
        return (0, abs(x), 0 if x > 0 else 1, "")
    return (1, 0, 0, str(x))


def _check_same_domain(p: SetPartition, q: SetPartition) -> None:
    if p.domain != q.domain:
        raise DomainMismatchError("set partitions live on different domains")


def join(p: SetPartition, q: SetPartition) -> SetPartition:
    """Finest partition coarser than both: blocks connected through shared elements."""
    _check_same_domain(p, q)
    parent: dict[Hashable, Hashable] = {x: x for x in p.domain}

    def find(x: Hashable) -> Hashable:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for block in (*p.blocks, *q.blocks):
        first, *rest = block
        for x in rest:
            parent[find(x)] = find(first)

    groups: dict[Hashable, set[Hashable]] = {}
    for x in parent:
        groups.setdefault(find(x), set()).add(x)
    return SetPartition.from_blocks(groups.values())


def meet(p: SetPartition, q: SetPartition) -> SetPartition:
    """Coarsest common refinement: nonempty pairwise intersections."""
    _check_same_domain(p, q)
    return SetPartition.from_blocks(b & c for b in p.blocks for c in q.blocks if b & c)


@dataclass(frozen=True)
class Pairing:
    """A set partition into pairs, optionally with one distinguished element per pair."""

    partition: SetPartition
    distinguished: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if any(len(b) != 2 for b in self.partition.blocks):
            raise CombinatoricsError("every block of a pairing has exactly two elements")
        for x in self.distinguished:
            block = self.partition.block_of(x)
            if len(block & self.distinguished) != 1:
                raise CombinatoricsError("at most one distinguished element per pair")

    @classmethod
    def from_pairs(cls, pairs: Iterable[Sequence[int]], distinguished: Iterable[int] = ()) -> Pairing:
        return cls(SetPartition.from_blocks(pairs), frozenset(distinguished))

    @classmethod
    def from_involution(cls, perm: SignedPermutation) -> Pairing:
        if not perm.is_involution() or any(perm(k) == k for k in perm.points):
            raise InvalidPermutationError(f"{perm} is not a fixed-point-free involution")
        return cls(SetPartition.from_permutation(perm))

    @property
    def domain(self) -> frozenset[int]:
        return self.partition.domain  # type: ignore[return-value]

    def partner(self, x: int) -> int:
        (y,) = self.partition.block_of(x) - {x}
        return y  # type: ignore[return-value]

    def pairs(self) -> list[tuple[int, int]]:
        return [(b[0], b[1]) for b in self.partition.sorted_blocks()]  # type: ignore[misc]

    def as_permutation(self, domain: SignedDomain) -> SignedPermutation:
        mapping = {}
        for a, b in self.pairs():
            mapping[a] = b
            mapping[b] = a
        return SignedPermutation(domain, mapping)

    def __len__(self) -> int:
        return len(self.partition)


def enumerate_pairings(points: Sequence[int]) -> Iterator[Pairing]:
    """All pairings of ``points``, lexicographic in the given order.

    The first point is matched with each later point in turn, then the rest
    is paired recursively; yields (m−1)!! pairings for m points.
    """
    for pairs in _pair_lists(tuple(points)):
        yield Pairing.from_pairs(pairs)


def _pair_lists(points: tuple[int, ...]) -> Iterator[list[tuple[int, int]]]:
    if not points:
        yield []
        return
    if len(points) % 2:
        return
    first = points[0]
    for i in range(1, len(points)):
        rest = points[1:i] + points[i + 1 :]
        for tail in _pair_lists(rest):
            yield [(first, points[i]), *tail]


def double_factorial(m: int) -> int:
    result = 1
    while m > 1:
        result *= m
        m -= 2
    return result


def triangle_defect(pi: SignedPermutation, rho: SignedPermutation) -> int:
    """|I| + 2#(Π(π)∨Π(ρ)) − #π − #ρ − #(πρ); never negative, zero iff π is planar on ρ."""
    blocks = len(join(SetPartition.from_permutation(pi), SetPartition.from_permutation(rho)))
    return pi.size + 2 * blocks - pi.num_cycles - rho.num_cycles - (pi * rho).num_cycles
