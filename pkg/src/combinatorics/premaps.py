"""Premaps: permutations π of ±I with δπδ = π⁻¹ and π(k) ≠ −k.

A premap encodes the faces (or hyperedges) of a map on a possibly
unorientable surface through its orientable double cover: cycles come in
pairs, one the reverse-negation of the other.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass
from functools import cached_property
from itertools import product

from src.exceptions import DomainMismatchError, InvalidPreMapError

from .partitions import IntegerPartition, Pairing, SetPartition, enumerate_pairings, join
from .signed import SignedDomain, SignedPermutation, compose, delta


class PreMap(SignedPermutation):
    """A signed permutation satisfying the premap conditions."""

    def __init__(self, domain: SignedDomain, mapping: Mapping[int, int]) -> None:
        super().__init__(domain, mapping)
        check_premap(self)

    @classmethod
    def from_permutation(cls, perm: SignedPermutation) -> PreMap:
        return cls(perm.domain, dict(perm.items()))

    @classmethod
    def identity_on(cls, domain: SignedDomain, positives: Iterable[int]) -> PreMap:
        return cls(domain, {p: p for k in positives for p in (k, -k)})

    def inverse(self) -> PreMap:
        return PreMap._raw(self.domain, {v: k for k, v in self.items()})  # type: ignore[return-value]

    @cached_property
    def positives(self) -> tuple[int, ...]:
        return tuple(sorted(k for k in self.points if k > 0))

    @property
    def half_cycles(self) -> int:
        """#(π)/2, the number of cycle pairs."""
        count = self.num_cycles
        if count % 2:
            raise InvalidPreMapError(f"premap {self} has an odd number of cycles")
        return count // 2

    def fd(self) -> FundamentalDomain:
        return fd(self)

    def extend_infinity(self) -> PreMap:
        """The same premap on ±[n]∞, fixing ±∞."""
        domain = self.domain.with_infinity()
        mapping = dict(self.items())
        mapping.setdefault(domain.infinity, domain.infinity)
        mapping.setdefault(-domain.infinity, -domain.infinity)
        return PreMap(domain, mapping)


def check_premap(perm: SignedPermutation) -> None:
    """Raise InvalidPreMapError unless ``perm`` is a premap."""
    for k, v in perm.items():
        if -k not in perm:
            raise InvalidPreMapError(f"{perm} acts on {k} but not on {-k}")
        if v == -k:
            raise InvalidPreMapError(f"{perm} sends {k} to {-k}")
        if perm(-v) != -k:
            raise InvalidPreMapError(f"{perm} does not satisfy δπδ = π⁻¹ at {k}")


def is_premap(perm: SignedPermutation) -> bool:
    try:
        check_premap(perm)
    except InvalidPreMapError:
        return False
    return True


@dataclass(frozen=True)
class FundamentalDomain:
    """One cycle chosen from each reversed-negated pair."""

    perm: SignedPermutation
    support: frozenset[int]

    def cycles(self) -> tuple[tuple[int, ...], ...]:
        return self.perm.cycles()

    def __len__(self) -> int:
        return self.perm.num_cycles


def fd(p: SignedPermutation) -> FundamentalDomain:
    """FD(p): keep the cycle where +∞ appears, else where the smallest |k| appears positively."""
    check_premap(p)
    chosen: list[int] = []
    for cycle in p.cycles():
        if any(p.domain.is_infinite(k) for k in cycle):
            keep = p.domain.infinity in cycle
        else:
            smallest = min(abs(k) for k in cycle)
            keep = smallest in cycle
        if keep:
            chosen.extend(cycle)
    support = frozenset(chosen)
    return FundamentalDomain(p.induced(support), support)


def _one_sided(face: SignedPermutation) -> tuple[SignedPermutation, SignedPermutation]:
    """φ₊ and φ₋ = δφ₊δ extended by the identity to ±I."""
    pts = face.points
    if any(-k in pts for k in pts):
        raise DomainMismatchError(f"{face} acts on both k and -k for some k")
    full = pts | {-k for k in pts}
    plus = face.extend(full)
    minus = SignedPermutation(face.domain, {-k: -v for k, v in face.items()}).extend(full)
    return plus, minus


def doubled(face: SignedPermutation) -> PreMap:
    """φ₊φ₋⁻¹ as a premap."""
    plus, minus = _one_sided(face)
    return PreMap.from_permutation(compose(plus, minus.inverse()))


def k_vertices(face: SignedPermutation, alpha: SignedPermutation) -> PreMap:
    """K(φ₊, α) = φ₊⁻¹α⁻¹φ₋, the vertex premap completing faces and hyperedges."""
    plus, minus = _one_sided(face)
    if alpha.points != plus.points:
        raise DomainMismatchError(f"hyperedge premap {alpha} does not live on ±I for I = {sorted(face.points)}")
    check_premap(alpha)
    return PreMap.from_permutation(compose(compose(plus.inverse(), alpha.inverse()), minus))


def _halved(count: int, what: str) -> int:
    if count % 2:
        raise InvalidPreMapError(f"{what} has an odd number of cycles on the doubled domain")
    return count // 2


def euler_characteristic(face: SignedPermutation, alpha: SignedPermutation) -> int:
    """χ(φ₊, α) = #(φ₊φ₋⁻¹)/2 + #α/2 + #K(φ₊,α)/2 − |I|, counting on the full doubled domain."""
    faces = _halved(doubled(face).num_cycles, "face premap")
    edges = _halved(alpha.num_cycles, "hyperedge premap")
    vertices = _halved(k_vertices(face, alpha).num_cycles, "vertex premap")
    return faces + edges + vertices - face.size


def premap_euler(phi: SignedPermutation, alpha: SignedPermutation) -> int:
    """χ for two premaps on ±I: (#φ + #α + #(φ⁻¹α⁻¹))/2 − |I|."""
    if phi.points != alpha.points:
        raise DomainMismatchError("premaps live on different point sets")
    total = phi.num_cycles + alpha.num_cycles + compose(phi.inverse(), alpha.inverse()).num_cycles
    return _halved(total, "premap pair") - phi.size // 2


def signed_points(positives: Sequence[int]) -> tuple[int, ...]:
    return tuple(p for k in positives for p in (k, -k))


def _from_pairing(domain: SignedDomain, pairing: Pairing) -> PreMap:
    # π = δ·p for a pairing p of ±I
    mapping = {}
    for a, b in pairing.pairs():
        mapping[a] = -b
        mapping[b] = -a
    return PreMap._raw(domain, mapping)  # type: ignore[return-value]


def premap_from_pairing(domain: SignedDomain, pairing: Pairing) -> PreMap:
    return PreMap.from_permutation(_from_pairing(domain, pairing))


def pairing_of(p: SignedPermutation) -> Pairing:
    """δp, the pairing a premap corresponds to."""
    return Pairing.from_involution(compose(delta(p.domain, p.points), p))


def enumerate_premaps(domain: SignedDomain, positives: Sequence[int] | None = None) -> Iterator[PreMap]:
    """Every premap on ±I exactly once, via pairings of ±I; (2|I|−1)!! in total."""
    pos = tuple(domain.positive() if positives is None else positives)
    for pairing in enumerate_pairings(signed_points(pos)):
        yield _from_pairing(domain, pairing)


def is_alternating(p: SignedPermutation) -> bool:
    """Every finite symbol changes sign."""
    return all((k > 0) != (v > 0) for k, v in p.items() if not p.domain.is_infinite(k))


def alternating_premap(domain: SignedDomain, plus: Pairing, minus: Pairing) -> PreMap:
    """δ(p₊ ∪ p₋) for a pairing p₊ of I and a pairing p₋ of −I."""
    mapping = {}
    for a, b in (*plus.pairs(), *minus.pairs()):
        mapping[a] = -b
        mapping[b] = -a
    return PreMap._raw(domain, mapping)  # type: ignore[return-value]


def enumerate_alternating_premaps(domain: SignedDomain, positives: Sequence[int] | None = None) -> Iterator[PreMap]:
    """Alternating premaps, in bijection with pairs of pairings of I; ((|I|−1)!!)² of them."""
    pos = tuple(domain.positive() if positives is None else positives)
    if len(pos) % 2:
        return
    negatives = tuple(-k for k in pos)
    for plus in enumerate_pairings(pos):
        for minus in enumerate_pairings(negatives):
            yield alternating_premap(domain, plus, minus)


def alternating_pairings(p: SignedPermutation) -> tuple[Pairing, Pairing]:
    """(π₊, π₋) on I with p = δ(π₊ ∪ δπ₋δ); inverse of the alternating bijection."""
    if not is_alternating(p):
        raise InvalidPreMapError(f"{p} is not alternating")
    plus, minus = [], []
    for k, v in p.items():
        if k > 0 and k < -v:
            plus.append((k, -v))
        elif k < 0 and -k < v:
            minus.append((-k, v))
    return Pairing.from_pairs(plus), Pairing.from_pairs(minus)


def is_involution_premap(p: SignedPermutation) -> bool:
    """A fixed-point-free involution (every cycle a transposition)."""
    return p.is_involution() and all(p(k) != k for k in p.points)


def enumerate_involution_premaps(domain: SignedDomain, positives: Sequence[int] | None = None) -> Iterator[PreMap]:
    """Fixed-point-free involution premaps: each pair {k, l} of I joined as (k,−l)(l,−k) or (k,l)(−k,−l)."""
    pos = tuple(domain.positive() if positives is None else positives)
    for pairing in enumerate_pairings(pos):
        pairs = pairing.pairs()
        for signs in product((-1, 1), repeat=len(pairs)):
            mapping: dict[int, int] = {}
            for (a, b), s in zip(pairs, signs, strict=True):
                mapping[a], mapping[s * b] = s * b, a
                mapping[-a], mapping[-s * b] = -s * b, -a
            yield PreMap._raw(domain, mapping)  # type: ignore[misc]


def haar_lambda(p: SignedPermutation) -> IntegerPartition:
    """Λ(FD(p)) for an alternating premap: half the lengths of its FD cycles."""
    if not is_alternating(p):
        raise InvalidPreMapError(f"{p} is not alternating")
    return IntegerPartition.of(len(c) // 2 for c in fd(p).cycles())


def pairing_identities_check(p1: Pairing, p2: Pairing) -> tuple[int, int, int]:
    """(#(π₁∨π₂), #FD(π₂δπ₁), #(π₁π₂)/2) for pairings of a set of positive symbols; all three agree."""
    if p1.domain != p2.domain:
        raise DomainMismatchError("pairings live on different sets")
    points = sorted(p1.domain)
    if any(k <= 0 for k in points):
        raise DomainMismatchError("pairing identities are stated for positive symbols")
    domain = SignedDomain(max(points))
    full = signed_points(points)
    pi1 = p1.as_permutation(domain).extend(full)
    pi2 = p2.as_permutation(domain).extend(full)
    neg = delta(domain, full)
    joined = len(join(p1.partition, p2.partition))
    fd_count = len(fd(compose(compose(pi2, neg), pi1)))
    product_half = _halved((p1.as_permutation(domain) * p2.as_permutation(domain)).num_cycles, "π₁π₂")
    return joined, fd_count, product_half


def transport_sign(p1: Pairing, p2: Pairing, rho: SignedPermutation) -> int:
    """(−1)^(#(π₁∨π₂)+m), m counting points distinguished in both; equals sgn(ρ).

    ``rho`` must carry the pairs of p1 onto pairs of p2 and distinguished
    elements onto distinguished elements.
    """
    if p1.domain != p2.domain or rho.points != p1.domain:
        raise DomainMismatchError("pairings and permutation live on different sets")
    for a, b in p1.pairs():
        if p2.partner(rho(a)) != rho(b):
            raise DomainMismatchError(f"{rho} does not map the pair {{{a},{b}}} onto a pair")
    if {rho(x) for x in p1.distinguished} != set(p2.distinguished):
        raise DomainMismatchError(f"{rho} does not map distinguished elements onto distinguished elements")
    blocks = len(join(p1.partition, p2.partition))
    m = len(p1.distinguished & p2.distinguished)
    return -1 if (blocks + m) % 2 else 1


def join_blocks(p: SignedPermutation, q: SignedPermutation) -> SetPartition:
    """Π(p) ∨ Π(q)."""
    return join(SetPartition.from_permutation(p), SetPartition.from_permutation(q))


def with_infinity(p: SignedPermutation) -> SignedPermutation:
    """``p`` on the carrier with ±∞ adjoined, fixing ±∞; unchanged when ∞ is already present."""
    if p.domain.has_infinity:
        return p
    domain = p.domain.with_infinity()
    mapping = dict(p.items())
    mapping[domain.infinity] = domain.infinity
    mapping[-domain.infinity] = -domain.infinity
    return SignedPermutation(domain, mapping)


def relabeled(p: SignedPermutation, positives: Sequence[int]) -> SignedPermutation:
    """``p`` on ±positives renamed onto ±[m], the i-th positive becoming i+1; ±∞ stays at infinity."""
    domain = p.domain
    finite = [k for k in positives if not domain.is_infinite(k)]
    has_inf = domain.has_infinity and domain.infinity in p.points
    target = SignedDomain(len(finite), has_inf)
    rename = {k: i + 1 for i, k in enumerate(finite)}
    if has_inf:
        rename[domain.infinity] = target.infinity
    expected = set(signed_points(list(rename)))
    if set(p.points) != expected:
        raise DomainMismatchError(f"{p} does not act on ±{sorted(rename)}")

    def new(k: int) -> int:
        return rename[k] if k > 0 else -rename[-k]

    return SignedPermutation(target, {new(k): new(v) for k, v in p.items()})


def split_by_colour(p: SignedPermutation, colour_of: Mapping[int, str]) -> dict[str, SignedPermutation] | None:
    """Restrictions of ``p`` to each colour class, or None when a cycle mixes colours.

    ``colour_of`` maps positive symbols to colours; ±∞, when present, must be fixed.
    """
    parts: dict[str, dict[int, int]] = {}
    for k, v in p.items():
        if p.domain.is_infinite(k):
            if v != k:
                return None
            continue
        if p.domain.is_infinite(v) or colour_of[abs(k)] != colour_of[abs(v)]:
            return None
        parts.setdefault(colour_of[abs(k)], {})[k] = v
    return {c: SignedPermutation(p.domain, mapping) for c, mapping in parts.items()}
