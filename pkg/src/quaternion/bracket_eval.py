"""Direct evaluation of bracket diagrams with matrix products, entrywise Re and tr·I."""

from __future__ import annotations

from collections.abc import Sequence

from src.brackets import BracketDiagram
from src.exceptions import DimensionMismatchError, IndexStructureError

from .algebra import Quaternion, QuaternionMatrix
from .contraction import ContractionValue


def _product(factors: list[QuaternionMatrix], size: int, exact: bool) -> QuaternionMatrix:
    if not factors:
        return QuaternionMatrix.identity(size, exact=exact)
    out = factors[0]
    for f in factors[1:]:
        out = out @ f
    return out


def eval_bracket(d: BracketDiagram, matrices: Sequence[QuaternionMatrix]) -> QuaternionMatrix:
    """Value of the bracketed product; X_k* is the adjoint of matrix k."""
    if len(matrices) < max((abs(k) for k in d.symbols), default=0):
        raise IndexStructureError(f"diagram {d} uses more symbols than the {len(matrices)} matrices bound")
    sizes = {m.shape for m in matrices}
    if len(sizes) > 1 or any(r != c for r, c in sizes):
        raise DimensionMismatchError(f"bracket evaluation needs equal square matrices, got {sorted(sizes)}")
    size = matrices[0].rows if matrices else 1
    exact = all(m.exact for m in matrices)

    opens: dict[int, list[str]] = {}
    closes: dict[int, int] = {}
    for b in d.ordered_brackets():
        opens.setdefault(b.open, []).append(b.tag)
        closes[b.close] = closes.get(b.close, 0) + 1

    stack: list[tuple[str | None, list[QuaternionMatrix]]] = [(None, [])]
    for p in range(1, len(d.symbol_order)):
        for tag in opens.get(p, []):
            stack.append((tag, []))
        k = d.symbol_order[p]
        m = matrices[abs(k) - 1]
        stack[-1][1].append(m if k > 0 else m.adjoint())
        for _ in range(closes.get(p + 1, 0)):
            tag, factors = stack.pop()
            value = _product(factors, size, exact)
            value = value.re() if tag == "Re" else QuaternionMatrix.scalar(value.ntr(), size, exact=exact)
            stack[-1][1].append(value)
    (_, factors), = stack
    return _product(factors, size, exact)


def as_matrix(value: ContractionValue, size: int, exact: bool = True) -> QuaternionMatrix:
    """Contraction results as N×N matrices: scalars and quaternions become multiples of the identity."""
    if isinstance(value, QuaternionMatrix):
        return value
    q = value if isinstance(value, Quaternion) else Quaternion(value, 0, 0, 0)
    return QuaternionMatrix.scalar(q, size, exact=exact)
