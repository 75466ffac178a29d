"""Writing Re_φRe tr_φtr as a product with Re and tr applied to bracketed intervals."""

from __future__ import annotations

from collections.abc import Callable
from typing import Literal

import structlog

from src.combinatorics import SignedPermutation, doubled, with_infinity
from src.exceptions import BracketError, NotBracketableError

from .diagram import TAGS, Bracket, BracketDiagram, Tag, perm_of_diagram
from .planarity import glb_condition, is_planar_on
from .zeta import construct_zeta

logger = structlog.get_logger()

Pending = int | Literal["new", "close"]


def _cycle_brackets(perm: SignedPermutation, position: dict[int, int], block: range, tag: Tag) -> list[Bracket]:
    """One bracket per cycle of ``perm`` in the block, except the cycle through the block's first symbol."""
    out = []
    for cycle in perm.cycles():
        spots = sorted(position[k] for k in cycle)
        if spots[0] not in block or block.start in spots:
            continue
        out.append(Bracket(spots[0], spots[-1] + 1, tag))
    return out


def diagram_on(zeta: SignedPermutation, phi_re: SignedPermutation, phi_tr: SignedPermutation) -> BracketDiagram:
    """Lay out ζ's cycles (∞ first) and bracket every cycle of both permutations on it.

    Closed cycles of ζ are wrapped in Re(tr(...)); inside a cycle each
    permutation cycle gets a bracket from its first to its last symbol.
    Raises BracketError when two of these tight brackets cross.
    """
    domain = zeta.domain
    inf = domain.infinity
    cycles = sorted(zeta.cycles(), key=lambda c: inf not in c)
    order: list[int] = []
    blocks: list[range] = []
    for cycle in cycles:
        if inf in cycle:
            i = cycle.index(inf)
            cycle = cycle[i:] + cycle[:i]
        blocks.append(range(len(order), len(order) + len(cycle)))
        order.extend(cycle)
    position = {k: i for i, k in enumerate(order)}

    brackets: list[Bracket] = []
    for block in blocks:
        if block.start != 0:
            brackets.extend(Bracket(block.start, block.stop, tag) for tag in TAGS)
        brackets.extend(_cycle_brackets(phi_re, position, block, "Re"))
        brackets.extend(_cycle_brackets(phi_tr, position, block, "tr"))
    return BracketDiagram(domain, tuple(order), tuple(brackets))


class DiagramSearch:
    """Depth-first layout of symbols and brackets driven by the two permutations.

    Every open bracket starts a fresh cycle of its function. A symbol is
    placed only where it continues, or starts, the current cycle of both
    functions, and a bracket closes once its cycle has come round.
    """

    def __init__(self, phi_re: SignedPermutation, phi_tr: SignedPermutation) -> None:
        self.perms: dict[Tag, SignedPermutation] = {"Re": phi_re, "tr": phi_tr}
        self.cycle_of = {
            tag: {k: i for i, cycle in enumerate(perm.cycles()) for k in cycle} for tag, perm in self.perms.items()
        }
        self.domain = phi_re.domain
        self.infinity = self.domain.infinity
        self.symbols = sorted((k for k in phi_re.points if k != self.infinity), key=lambda k: (abs(k), k < 0))
        self.order: list[int] = [self.infinity]
        self.placed: set[int] = set()
        # [first, last] symbol of the current cycle, one stack per function; the root holds ∞
        self.contexts: dict[Tag, list[list[int | None]]] = {tag: [[self.infinity, self.infinity]] for tag in TAGS}
        self.stack: list[tuple[Tag, int]] = []
        self.brackets: list[Bracket] = []
        self.dead: set[tuple] = set()

    def run(self) -> BracketDiagram | None:
        if not self._step():
            return None
        return BracketDiagram(self.domain, tuple(self.order), tuple(self.brackets))

    def _pending(self, tag: Tag) -> Pending:
        first, last = self.contexts[tag][-1]
        if last is None:
            return "new"
        following = self.perms[tag](last)
        return "close" if following == first else following

    def _fresh(self, tag: Tag, k: int) -> bool:
        ids = self.cycle_of[tag]
        touched = {ids[m] for m in self.placed} | {ids[self.infinity]}
        return ids[k] not in touched

    def _unplaced(self) -> list[int]:
        return [k for k in self.symbols if k not in self.placed]

    def _key(self) -> tuple:
        return (
            frozenset(self.placed),
            tuple(tag for tag, _ in self.stack),
            tuple(tuple(tuple(c) for c in self.contexts[tag]) for tag in TAGS),
        )

    def _step(self) -> bool:
        key = self._key()
        if key in self.dead:
            return False
        if self._advance():
            return True
        self.dead.add(key)
        return False

    def _advance(self) -> bool:
        p, q = self._pending("Re"), self._pending("tr")
        if not self.stack and p == q == "close" and len(self.placed) == len(self.symbols):
            return True
        if isinstance(p, int) and p == q:
            # brackets hidden from both functions can always move past this symbol
            return self._attempt(self._place, p)
        if self.stack and self._pending(self.stack[-1][0]) == "close" and self._attempt(self._close):
            return True
        for k in self._candidates(p, q):
            if self._attempt(self._place, k):
                return True
        for tag in TAGS:
            if self._pending(tag) == "new" or not any(self._fresh(tag, k) for k in self._unplaced()):
                continue
            if self._attempt(self._open, tag):
                return True
        return False

    def _candidates(self, p: Pending, q: Pending) -> list[int]:
        if p == "close" or q == "close":
            return []
        if isinstance(p, int):
            return [p] if q == "new" and self._fresh("tr", p) else []
        if isinstance(q, int):
            return [q] if self._fresh("Re", q) else []
        return [k for k in self._unplaced() if self._fresh("Re", k) and self._fresh("tr", k)]

    def _attempt(self, move: Callable[..., Callable[[], None]], *args: object) -> bool:
        undo = move(*args)
        if self._step():
            return True
        undo()
        return False

    def _place(self, k: int) -> Callable[[], None]:
        saved = {tag: list(self.contexts[tag][-1]) for tag in TAGS}
        for tag in TAGS:
            current = self.contexts[tag][-1]
            if current[1] is None:
                current[0] = k
            current[1] = k
        self.order.append(k)
        self.placed.add(k)

        def undo() -> None:
            for tag in TAGS:
                self.contexts[tag][-1][:] = saved[tag]
            self.order.pop()
            self.placed.discard(k)

        return undo

    def _open(self, tag: Tag) -> Callable[[], None]:
        self.stack.append((tag, len(self.order)))
        self.contexts[tag].append([None, None])

        def undo() -> None:
            self.stack.pop()
            self.contexts[tag].pop()

        return undo

    def _close(self) -> Callable[[], None]:
        tag, start = self.stack.pop()
        current = self.contexts[tag].pop()
        self.brackets.append(Bracket(start, len(self.order), tag))

        def undo() -> None:
            self.brackets.pop()
            self.contexts[tag].append(current)
            self.stack.append((tag, start))

        return undo


def _reproduces(diagram: BracketDiagram, phi_re: SignedPermutation, phi_tr: SignedPermutation) -> bool:
    return perm_of_diagram(diagram, "Re") == phi_re and perm_of_diagram(diagram, "tr") == phi_tr


def bracketize(phi_re: SignedPermutation, phi_tr: SignedPermutation) -> BracketDiagram:
    """A legal two-function bracket diagram whose Re and tr permutations double to the inputs.

    Raises NotBracketableError naming "sign-obstruction", "crossing" or
    "glb-violation". A BracketError means no layout was found for inputs
    that pass all three checks.
    """
    phi_re, phi_tr = with_infinity(phi_re), with_infinity(phi_tr)
    check = is_planar_on(phi_re, phi_tr.inverse())
    if check.sign_conflict is not None:
        raise NotBracketableError(
            "sign-obstruction", f"X{check.sign_conflict} would appear both plain and starred"
        )
    if not check.planar:
        raise NotBracketableError("crossing", "φ_Re is not planar on φ_tr⁻¹", check.crossing)
    assert check.witness is not None
    re_j, tr_j = phi_re.induced(check.witness), phi_tr.induced(check.witness)
    if not glb_condition(re_j, tr_j):
        raise NotBracketableError("glb-violation", "Re and tr brackets cannot be nested simultaneously")

    zeta = construct_zeta(phi_re, phi_tr)
    try:
        diagram: BracketDiagram | None = diagram_on(zeta, re_j, tr_j)
    except BracketError as e:
        logger.debug("Tight brackets cross, searching", reason=str(e))
        diagram = None
    if diagram is None or not _reproduces(diagram, re_j, tr_j):
        diagram = DiagramSearch(re_j, tr_j).run()
    if diagram is None or not _reproduces(diagram, re_j, tr_j):
        raise BracketError(f"no bracket layout found for Re {re_j} and tr {tr_j}")
    logger.debug("Bracketized", diagram=str(diagram))
    return diagram


def diagram_premaps(d: BracketDiagram) -> tuple[SignedPermutation, SignedPermutation]:
    """The premaps (φ_Re, φ_tr) a diagram stands for."""
    return doubled(perm_of_diagram(d, "Re")), doubled(perm_of_diagram(d, "tr"))
