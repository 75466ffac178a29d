"""Signed index sets and permutations on them.

Symbols are nonzero integers. The point at infinity of a domain with ``n``
base symbols is the sentinel ``n + 1`` and its negative is ``-(n + 1)``.
Permutations compose right to left: ``(a * b)(k) == a(b(k))``.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass
from functools import cached_property

from src.exceptions import DomainMismatchError, InvalidPermutationError

Label = int | str


@dataclass(frozen=True)
class SignedDomain:
    """The carrier ±[n], optionally with ±∞ adjoined."""

    n: int
    has_infinity: bool = False

    def __post_init__(self) -> None:
        if self.n < 0:
            raise InvalidPermutationError(f"domain size must be non-negative, got {self.n}")

    @property
    def infinity(self) -> int:
        return self.n + 1

    def positive(self) -> tuple[int, ...]:
        """[n], with ∞ last when adjoined."""
        points = tuple(range(1, self.n + 1))
        return points + (self.infinity,) if self.has_infinity else points

    def carrier(self) -> tuple[int, ...]:
        return tuple(p for k in self.positive() for p in (k, -k))

    def is_infinite(self, k: int) -> bool:
        return self.has_infinity and abs(k) == self.infinity

    def with_infinity(self) -> SignedDomain:
        return SignedDomain(self.n, True)

    def without_infinity(self) -> SignedDomain:
        return SignedDomain(self.n, False)

    def label(self, k: int) -> Label:
        """External spelling of a symbol: ints, or "inf" / "-inf"."""
        if self.is_infinite(k):
            return "inf" if k > 0 else "-inf"
        return k

    def parse(self, raw: Label) -> int:
        """Inverse of :meth:`label`; also accepts the unicode ∞."""
        if isinstance(raw, str):
            text = raw.strip().replace("∞", "inf")
            if text in ("inf", "+inf"):
                return self._checked(self.infinity, raw)
            if text == "-inf":
                return self._checked(-self.infinity, raw)
            try:
                raw = int(text)
            except ValueError as e:
                raise InvalidPermutationError(f"not a symbol: {raw!r}") from e
        return self._checked(int(raw), raw)

    def _checked(self, k: int, raw: Label) -> int:
        if k == 0 or abs(k) > self.n + (1 if self.has_infinity else 0):
            raise InvalidPermutationError(f"symbol {raw!r} outside {self}")
        return k

    def __str__(self) -> str:
        return f"±[{self.n}]" + ("∞" if self.has_infinity else "")


def symbol_key(k: int, domain: SignedDomain) -> tuple[int, int]:
    """Display order: +∞ first, then by absolute value with positives first."""
    if domain.is_infinite(k):
        return (-1, 0 if k > 0 else 1)
    return (abs(k), 0 if k > 0 else 1)


class SignedPermutation:
    """A bijection of a finite set of signed symbols.

    ``points`` may be the whole carrier of ``domain`` or any subset of it
    (induced permutations, one-sided face permutations).
    """

    def __init__(self, domain: SignedDomain, mapping: Mapping[int, int]) -> None:
        self.domain = domain
        self._map: dict[int, int] = dict(mapping)
        if set(self._map.values()) != set(self._map):
            raise InvalidPermutationError(f"mapping is not a bijection of its points: {self._map}")
        for k in self._map:
            domain._checked(k, k)

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_cycles(
        cls,
        domain: SignedDomain,
        cycles: Iterable[Sequence[Label]],
        points: Iterable[int] | None = None,
    ) -> SignedPermutation:
        """Build from cycle notation; unmentioned points are fixed."""
        mapping: dict[int, int] = {}
        for cycle in cycles:
            symbols = [domain.parse(x) for x in cycle]
            for i, k in enumerate(symbols):
                if k in mapping:
                    raise InvalidPermutationError(f"symbol {domain.label(k)} appears twice in cycle notation")
                mapping[k] = symbols[(i + 1) % len(symbols)]
        support = set(domain.carrier() if points is None else points)
        if not set(mapping) <= support:
            raise InvalidPermutationError("cycle notation mentions symbols outside the point set")
        for k in support:
            mapping.setdefault(k, k)
        return cls(domain, mapping)

    @classmethod
    def identity(cls, domain: SignedDomain, points: Iterable[int] | None = None) -> SignedPermutation:
        pts = domain.carrier() if points is None else points
        return cls(domain, {k: k for k in pts})

    # -- mapping protocol ---------------------------------------------------

    def __call__(self, k: int) -> int:
        return self._map[k]

    def __contains__(self, k: int) -> bool:
        return k in self._map

    def items(self) -> Iterator[tuple[int, int]]:
        return iter(self._map.items())

    @cached_property
    def points(self) -> frozenset[int]:
        return frozenset(self._map)

    @property
    def size(self) -> int:
        return len(self._map)

    # -- algebra ------------------------------------------------------------

    def __mul__(self, other: SignedPermutation) -> SignedPermutation:
        return compose(self, other)

    def inverse(self) -> SignedPermutation:
        return type(self)._raw(self.domain, {v: k for k, v in self._map.items()})

    def conjugate_by(self, g: SignedPermutation) -> SignedPermutation:
        """g ∘ self ∘ g⁻¹."""
        return compose(compose(g, self), g.inverse())

    def extend(self, points: Iterable[int]) -> SignedPermutation:
        """Same permutation acting on a larger point set, fixing the new points."""
        mapping = dict(self._map)
        for k in points:
            mapping.setdefault(k, k)
        return SignedPermutation(self.domain, mapping)

    def induced(self, subset: Iterable[int]) -> SignedPermutation:
        """Permutation of ``subset`` sending k to the first of π(k), π²(k), … in the subset."""
        J = frozenset(subset)
        if not J:
            raise InvalidPermutationError("induced permutation needs a nonempty subset")
        if not J <= self.points:
            raise DomainMismatchError("subset is not contained in the permutation's points")
        mapping = {}
        for k in J:
            image = self._map[k]
            while image not in J:
                image = self._map[image]
            mapping[k] = image
        return SignedPermutation(self.domain, mapping)

    restrict = induced

    # -- cycle structure ----------------------------------------------------

    @cached_property
    def _cycles(self) -> tuple[tuple[int, ...], ...]:
        seen: set[int] = set()
        result = []
        key = lambda k: symbol_key(k, self.domain)  # noqa: E731
        for start in sorted(self._map, key=key):
            if start in seen:
                continue
            cycle = [start]
            seen.add(start)
            k = self._map[start]
            while k != start:
                cycle.append(k)
                seen.add(k)
                k = self._map[k]
            result.append(tuple(cycle))
        return tuple(result)

    def cycles(self) -> tuple[tuple[int, ...], ...]:
        """Cycles, each starting at its first symbol in display order."""
        return self._cycles

    @property
    def num_cycles(self) -> int:
        return len(self._cycles)

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted((len(c) for c in self._cycles), reverse=True))

    def sign(self) -> int:
        return -1 if (self.size - self.num_cycles) % 2 else 1

    def orbits(self) -> list[frozenset[int]]:
        return [frozenset(c) for c in self._cycles]

    def orbit_of(self, k: int) -> tuple[int, ...]:
        for cycle in self._cycles:
            if k in cycle:
                return cycle
        raise DomainMismatchError(f"{k} is not a point of this permutation")

    def is_identity(self) -> bool:
        return all(k == v for k, v in self._map.items())

    def is_involution(self) -> bool:
        return all(self._map[v] == k for k, v in self._map.items())

    # -- presentation -------------------------------------------------------

    def labelled_cycles(self) -> list[list[Label]]:
        return [[self.domain.label(k) for k in c] for c in self._cycles]

    def __str__(self) -> str:
        return "".join("(" + ",".join(str(x) for x in c) + ")" for c in self.labelled_cycles())

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SignedPermutation):
            return NotImplemented
        return self._map == other._map

    def __hash__(self) -> int:
        return hash(frozenset(self._map.items()))

    @classmethod
    def _raw(cls, domain: SignedDomain, mapping: dict[int, int]) -> SignedPermutation:
        obj = cls.__new__(cls)
        obj.domain = domain
        obj._map = mapping
        return obj


def compose(a: SignedPermutation, b: SignedPermutation) -> SignedPermutation:
    """Right-to-left product: result(k) = a(b(k))."""
    if a.points != b.points:
        raise DomainMismatchError(f"cannot compose permutations on different point sets: {a} and {b}")
    return SignedPermutation._raw(a.domain, {k: a._map[b._map[k]] for k in b._map})


def delta(domain: SignedDomain, points: Iterable[int] | None = None) -> SignedPermutation:
    """The negation map k ↦ −k."""
    pts = domain.carrier() if points is None else points
    return SignedPermutation(domain, {k: -k for k in pts})


def delta_eps(domain: SignedDomain, eps: Mapping[int, int], points: Iterable[int] | None = None) -> SignedPermutation:
    """Twisted negation k ↦ ε(|k|)·k; ±∞ is never negated."""
    pts = domain.carrier() if points is None else points
    mapping = {}
    for k in pts:
        e = 1 if domain.is_infinite(k) else eps.get(abs(k), 1)
        if e not in (1, -1):
            raise InvalidPermutationError(f"ε must be ±1, got {e} at {abs(k)}")
        mapping[k] = e * k
    return SignedPermutation(domain, mapping)


def positive_part(perm: SignedPermutation) -> SignedPermutation:
    """Induced permutation on the positive symbols."""
    return perm.induced(k for k in perm.points if k > 0)


def cayley_distance(a: SignedPermutation, b: SignedPermutation) -> int:
    """Transposition distance |I| − #(a⁻¹b)."""
    return a.size - compose(a.inverse(), b).num_cycles


def is_below(pi: SignedPermutation, sigma: SignedPermutation) -> bool:
    """π ⪯ σ: σ arises from π by successively joining cycles."""
    return pi.num_cycles - sigma.num_cycles == cayley_distance(pi, sigma)
