"""Planarity, upper bounds in the join-by-transposition order, and the glb count."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import structlog

from src.combinatorics import (
    SetPartition,
    SignedPermutation,
    compose,
    is_below,
    is_premap,
    join,
    join_blocks,
    meet,
    triangle_defect,
)
from src.exceptions import BracketError, DomainMismatchError

logger = structlog.get_logger()

BRUTE_FORCE_MAX_POINTS = 7


def _same_points(pi: SignedPermutation, rho: SignedPermutation) -> None:
    if pi.points != rho.points:
        raise DomainMismatchError(f"{pi} and {rho} act on different point sets")


def is_planar(pi: SignedPermutation, rho: SignedPermutation) -> bool:
    """#π + #ρ + #(πρ) − |I| = 2#(Π(π)∨Π(ρ)), for permutations on the same points."""
    _same_points(pi, rho)
    return triangle_defect(pi, rho) == 0


@dataclass(frozen=True)
class OrientationResult:
    """A choice of one of ±k per symbol closed under both premaps, when one exists."""

    witness: frozenset[int] | None
    conflict: int | None = None

    @property
    def orientable(self) -> bool:
        return self.witness is not None


def _components(pi: SignedPermutation, rho: SignedPermutation) -> list[frozenset[int]]:
    return [frozenset(b) for b in join_blocks(pi, rho).blocks]  # type: ignore[arg-type]


def orientation(pi: SignedPermutation, rho: SignedPermutation) -> OrientationResult:
    """Pick J ⊆ ±I, a union of cycles of both premaps with exactly one of ±k.

    Each orbit of ⟨π, ρ⟩ is paired with its negation; the orbit holding +∞,
    or else the smallest absolute value with positive sign, is kept.
    """
    _same_points(pi, rho)
    chosen: set[int] = set()
    components = sorted(_components(pi, rho), key=lambda c: min(abs(k) for k in c))
    for component in components:
        clash = sorted(k for k in component if -k in component)
        if clash:
            return OrientationResult(None, conflict=abs(clash[0]))
        if chosen & {-k for k in component} or chosen & component:
            continue
        inf = pi.domain.infinity
        if pi.domain.has_infinity and -inf in component:
            continue
        if pi.domain.has_infinity and inf in component:
            chosen |= component
            continue
        smallest = min(component, key=lambda k: (abs(k), k < 0))
        chosen |= component if smallest > 0 else {-k for k in component}
    return OrientationResult(frozenset(chosen))


@dataclass(frozen=True)
class PlanarityResult:
    planar: bool
    witness: frozenset[int] | None = None
    crossing: tuple[int, int, int, int] | None = None
    sign_conflict: int | None = None


def crossing_quadruple(pi: SignedPermutation, rho: SignedPermutation) -> tuple[int, int, int, int] | None:
    """Smallest (a, b, c, d) with π|{a,b,c,d} = (a,b,c,d) and ρ|{a,b,c,d} = (a,c)(b,d)."""
    _same_points(pi, rho)
    for block in sorted(_components(pi, rho), key=lambda c: sorted(map(abs, c))):
        for subset in itertools.combinations(sorted(block, key=lambda k: (abs(k), k < 0)), 4):
            p = pi.induced(subset)
            if p.num_cycles != 1:
                continue
            a = subset[0]
            b, c, d = p(a), p(p(a)), p(p(p(a)))
            r = rho.induced(subset)
            if r(a) == c and r(c) == a and r(b) == d and r(d) == b:
                return a, b, c, d
    return None


def is_planar_on(pi: SignedPermutation, rho: SignedPermutation) -> PlanarityResult:
    """Planarity of π on ρ: plain permutations directly, premaps on an orientation witness J."""
    if not (is_premap(pi) and is_premap(rho)):
        planar = is_planar(pi, rho)
        return PlanarityResult(planar, crossing=None if planar else crossing_quadruple(pi, rho))
    chosen = orientation(pi, rho)
    if not chosen.orientable:
        return PlanarityResult(False, sign_conflict=chosen.conflict)
    assert chosen.witness is not None
    p, r = pi.induced(chosen.witness), rho.induced(chosen.witness)
    if is_planar(p, r):
        return PlanarityResult(True, witness=chosen.witness)
    return PlanarityResult(False, witness=chosen.witness, crossing=crossing_quadruple(p, r))


def glb_condition(pi: SignedPermutation, rho: SignedPermutation) -> bool:
    """#π + #ρ = #(Π(π)∧Π(ρ)) + #(Π(π)∨Π(ρ)), on orbits with signs forgotten."""
    _same_points(pi, rho)
    p = _unsigned_orbits(pi)
    r = _unsigned_orbits(rho)
    return len(p) + len(r) == len(meet(p, r)) + len(join(p, r))


def _unsigned_orbits(perm: SignedPermutation) -> SetPartition:
    return SetPartition.from_blocks(frozenset(abs(k) for k in orbit) for orbit in perm.orbits())


@dataclass(frozen=True)
class UpperBound:
    """A least upper bound σ with the checks of the equivalent conditions."""

    sigma: SignedPermutation
    above_both: bool
    least: bool
    geodesic: bool
    planar: bool

    @property
    def consistent(self) -> bool:
        return self.above_both and self.least and self.geodesic and self.planar


def on_geodesic(pi: SignedPermutation, rho: SignedPermutation, sigma: SignedPermutation) -> bool:
    """#π − #σ + #ρ − #σ equals the distance |I| − #(ρπ⁻¹)."""
    length = pi.size - compose(rho, pi.inverse()).num_cycles
    return (pi.num_cycles - sigma.num_cycles) + (rho.num_cycles - sigma.num_cycles) == length


def upper_bound_status(pi: SignedPermutation, rho: SignedPermutation) -> UpperBound | None:
    """A least upper bound of π and ρ when π is planar on ρ⁻¹, otherwise None."""
    from .zeta import lub_permutation

    _same_points(pi, rho)
    planar = is_planar(pi, rho.inverse())
    if not planar:
        return None
    sigma = lub_permutation(pi, rho)
    status = UpperBound(
        sigma=sigma,
        above_both=is_below(pi, sigma) and is_below(rho, sigma),
        least=SetPartition.from_permutation(sigma) == join_blocks(pi, rho),
        geodesic=on_geodesic(pi, rho, sigma),
        planar=planar,
    )
    if not status.consistent:
        raise BracketError(f"upper bound {sigma} of {pi} and {rho} fails its checks")
    return status


def brute_force_upper_bound(pi: SignedPermutation, rho: SignedPermutation) -> SignedPermutation | None:
    """Any σ with π, ρ ⪯ σ, by exhaustive search; for small point sets only."""
    _same_points(pi, rho)
    points = sorted(pi.points)
    if len(points) > BRUTE_FORCE_MAX_POINTS:
        raise BracketError(f"exhaustive upper-bound search is limited to {BRUTE_FORCE_MAX_POINTS} points")
    for image in itertools.permutations(points):
        sigma = SignedPermutation(pi.domain, dict(zip(points, image, strict=True)))
        if is_below(pi, sigma) and is_below(rho, sigma):
            return sigma
    return None
