"""Construction of a common upper bound ζ from two permutations.

Starting from ∞, the next symbol follows φ_Re unless its φ_tr orbit has
already been entered; then it is the first unused φ_tr image of the symbols
chosen so far, most recent first; when none is left a fresh symbol starts a
new cycle (least-upper-bound mode) or continues the current one (cyclic mode).
"""

from __future__ import annotations

from collections.abc import Callable
from typing import Literal

import structlog

from src.combinatorics import SignedPermutation, with_infinity
from src.exceptions import BracketError, NotBracketableError

from .planarity import is_planar_on

logger = structlog.get_logger()

ZetaMode = Literal["lub", "cyclic"]

Fresh = Callable[[set[int]], int | None]


def _orbit_ids(perm: SignedPermutation) -> dict[int, int]:
    return {k: i for i, cycle in enumerate(perm.cycles()) for k in cycle}


def _build(
    re: SignedPermutation,
    tr: SignedPermutation,
    start: int,
    fresh: Fresh,
    mode: ZetaMode,
    signed: bool,
) -> list[list[int]]:
    orbit = _orbit_ids(tr)
    cycles: list[list[int]] = [[start]]
    order = [start]
    appeared = {start}
    entered = {orbit[start]}

    def admit(x: int) -> None:
        if signed and -x in appeared:
            raise BracketError(f"symbol {x} is forced after its negative already appeared")
        order.append(x)
        appeared.add(x)
        entered.add(orbit[x])

    k = start
    while True:
        candidate: int | None = re(k)
        if orbit[candidate] in entered:
            candidate = next((tr(m) for m in reversed(order) if tr(m) not in appeared), None)
        if candidate is not None:
            cycles[-1].append(candidate)
        else:
            candidate = fresh(appeared)
            if candidate is None:
                break
            if mode == "lub":
                cycles.append([candidate])
            else:
                cycles[-1].append(candidate)
        admit(candidate)
        k = candidate
    return cycles


def _to_permutation(template: SignedPermutation, cycles: list[list[int]]) -> SignedPermutation:
    mapping = {c[i]: c[(i + 1) % len(c)] for c in cycles for i in range(len(c))}
    return SignedPermutation(template.domain, mapping)


def lub_permutation(pi: SignedPermutation, rho: SignedPermutation, mode: ZetaMode = "lub") -> SignedPermutation:
    """ζ for two permutations of the same unsigned points, starting at ∞ (or the smallest point)."""
    points = sorted(pi.points, key=abs)
    inf = pi.domain.infinity
    start = inf if inf in pi.points else points[0]

    def fresh(appeared: set[int]) -> int | None:
        return next((k for k in points if k not in appeared), None)

    return _to_permutation(pi, _build(pi, rho, start, fresh, mode, signed=False))


def construct_zeta(phi_re: SignedPermutation, phi_tr: SignedPermutation, mode: ZetaMode = "lub") -> SignedPermutation:
    """ζ on a set holding one of ±k per symbol, with both premaps planar on ζ⁻¹.

    Fresh starts use the smallest unused absolute value with positive sign.
    """
    phi_re, phi_tr = with_infinity(phi_re), with_infinity(phi_tr)
    check = is_planar_on(phi_re, phi_tr.inverse())
    if check.sign_conflict is not None:
        raise NotBracketableError(
            "sign-obstruction", f"X{check.sign_conflict} would appear both plain and starred"
        )
    if not check.planar:
        raise NotBracketableError("crossing", f"φ_Re is not planar on φ_tr⁻¹: {phi_re}, {phi_tr}", check.crossing)

    domain = phi_re.domain
    magnitudes = range(1, domain.n + 1)

    def fresh(appeared: set[int]) -> int | None:
        return next((k for k in magnitudes if k not in appeared and -k not in appeared), None)

    cycles = _build(phi_re, phi_tr, domain.infinity, fresh, mode, signed=True)
    zeta = _to_permutation(phi_re, cycles)
    logger.debug("Constructed upper bound", zeta=str(zeta), mode=mode)
    return zeta
