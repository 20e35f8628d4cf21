"""
Quantum-Torus Orbifold Calculator – Exact Sparse Linear Algebra
═══════════════════════════════════════════════════════════════
Rank, kernels, solving and quotient dimensions over Q(mu).

Elimination runs on integer polynomial rows in mu:
    1. Each row has its denominators cleared by their lcm.
    2. Columns are visited in the requested order; the pivot is the row whose
       entry in that column has the lowest degree (ties: fewest nonzeros,
       then lowest row index).
    3. Other rows are updated with the cross-multiplied combination
       r <- (p/g) r - (a/g) prow, g = gcd(p, a), and cut down to their
       primitive part, so entries stay polynomial and small.
Division only happens during back-substitution.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Set, Tuple

from sympy.polys.matrices import DomainMatrix

from algebra.scalars import (
    FIELD,
    POLY_RING,
    SCALAR_DOMAIN,
    ZERO,
    Poly,
    Scalar,
    from_polys,
)

logger = logging.getLogger("linalg")

Vector = Dict[int, Scalar]
PolyRow = Dict[int, Poly]

# solve_linear result for an inconsistent system
NO_SOLUTION = None


# ═══════════════════════════════════════════════
# Matrix container
# ═══════════════════════════════════════════════

@dataclass
class SparseMatrix:
    """
    Coordinate-format matrix over Q(mu).

    ``row_labels`` / ``col_labels`` optionally name the basis vectors
    (lattice points, (point, slot) pairs, ...) for reporting.
    """
    rows: int
    cols: int
    entries: Dict[Tuple[int, int], Scalar] = field(default_factory=dict)
    row_labels: Optional[List[object]] = None
    col_labels: Optional[List[object]] = None

    def __post_init__(self):
        for (r, c), x in list(self.entries.items()):
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise ValueError(f"entry ({r}, {c}) outside a {self.rows}x{self.cols} matrix")
            if not x:
                del self.entries[(r, c)]

    @classmethod
    def from_columns(cls, rows: int, columns: Sequence[Mapping[int, Scalar]], **labels) -> "SparseMatrix":
        entries = {}
        for c, col in enumerate(columns):
            for r, x in col.items():
                if x:
                    entries[(r, c)] = x
        return cls(rows, len(columns), entries, **labels)

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[Scalar]]) -> "SparseMatrix":
        n_rows = len(rows)
        n_cols = len(rows[0]) if rows else 0
        entries = {
            (r, c): FIELD(x) for r, row in enumerate(rows) for c, x in enumerate(row) if x
        }
        return cls(n_rows, n_cols, entries)

    def row_dicts(self) -> List[Vector]:
        out: List[Vector] = [dict() for _ in range(self.rows)]
        for (r, c), x in self.entries.items():
            out[r][c] = x
        return out

    def column(self, c: int) -> Vector:
        return {r: x for (r, cc), x in self.entries.items() if cc == c}

    def mat_vec(self, x: Mapping[int, Scalar]) -> Vector:
        out: Vector = {}
        for (r, c), a in self.entries.items():
            xc = x.get(c)
            if xc:
                out[r] = out.get(r, ZERO) + a * xc
        return {r: v for r, v in out.items() if v}

    def matmul(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        by_row: Dict[int, List[Tuple[int, Scalar]]] = {}
        for (r, c), x in other.entries.items():
            by_row.setdefault(r, []).append((c, x))
        out: Dict[Tuple[int, int], Scalar] = {}
        for (r, k), a in self.entries.items():
            for c, b in by_row.get(k, ()):
                out[(r, c)] = out.get((r, c), ZERO) + a * b
        return SparseMatrix(self.rows, other.cols, out)

    def is_zero(self) -> bool:
        return not self.entries

    def to_dense(self) -> List[List[Scalar]]:
        dense = [[ZERO] * self.cols for _ in range(self.rows)]
        for (r, c), x in self.entries.items():
            dense[r][c] = x
        return dense


# ═══════════════════════════════════════════════
# Polynomial row helpers
# ═══════════════════════════════════════════════

def _clear_denominators(vector: Mapping[int, Scalar]) -> PolyRow:
    common = POLY_RING.one
    for x in vector.values():
        if x.denom != POLY_RING.one:
            common = common.lcm(x.denom)
    row = {}
    for c, x in vector.items():
        if x:
            row[c] = x.numer * common.exquo(x.denom)
    return row


def _primitive(row: PolyRow) -> PolyRow:
    g = POLY_RING.zero
    for p in row.values():
        g = p.gcd(g) if g else p
        if g == POLY_RING.one or g == -POLY_RING.one:
            return row
    if not g:
        return row
    return {c: p.exquo(g) for c, p in row.items()}


def _pivot_key(row: PolyRow, col: int, index: int) -> Tuple[int, int, int]:
    return (row[col].degree(), len(row), index)


def _combine(prow: PolyRow, row: PolyRow, col: int) -> PolyRow:
    """Cross-multiplied elimination of ``col`` from ``row`` using ``prow``."""
    p, a = prow[col], row[col]
    g = p.gcd(a)
    pg, ag = p.exquo(g), a.exquo(g)
    out: PolyRow = {}
    for c, x in row.items():
        if c != col:
            out[c] = pg * x
    for c, y in prow.items():
        if c == col:
            continue
        s = out.get(c, POLY_RING.zero) - ag * y
        if s:
            out[c] = s
        else:
            out.pop(c, None)
    return _primitive({c: x for c, x in out.items() if x})


def _to_scalar(p: Poly) -> Scalar:
    return from_polys(p, POLY_RING.one)


# ═══════════════════════════════════════════════
# Elimination core
# ═══════════════════════════════════════════════

def row_echelon(rows: Iterable[Mapping[int, Scalar]], column_order: Sequence[int]) -> List[Tuple[int, PolyRow]]:
    """
    Fraction-free echelon form.

    Returns (pivot column, polynomial row) pairs in pivot order; every row is
    supported on its pivot and columns visited after it (or never visited).
    """
    active: Dict[int, PolyRow] = {}
    col_index: Dict[int, Set[int]] = {}
    for i, vec in enumerate(rows):
        row = _primitive(_clear_denominators(vec))
        if row:
            active[i] = row
            for c in row:
                col_index.setdefault(c, set()).add(i)

    pivots: List[Tuple[int, PolyRow]] = []
    for col in column_order:
        holders = col_index.get(col)
        if not holders:
            continue
        best = min(holders, key=lambda i: _pivot_key(active[i], col, i))
        prow = active.pop(best)
        for c in prow:
            col_index[c].discard(best)
        for i in sorted(holders):
            row = active[i]
            new = _combine(prow, row, col)
            for c in row:
                if c not in new:
                    col_index[c].discard(i)
            if new:
                active[i] = new
                for c in new:
                    col_index.setdefault(c, set()).add(i)
            else:
                del active[i]
        pivots.append((col, prow))
        if not active:
            break
    logger.debug("echelon: %d pivots over %d columns", len(pivots), len(column_order))
    return pivots


def _back_substitute(pivots: List[Tuple[int, PolyRow]], fixed: Mapping[int, Scalar]) -> Vector:
    """Solve the echelon rows for their pivot variables given values of all others."""
    x: Vector = dict(fixed)
    for col, row in reversed(pivots):
        acc = ZERO
        for c, p in row.items():
            if c != col:
                xc = x.get(c)
                if xc:
                    acc = acc + _to_scalar(p) * xc
        if acc:
            x[col] = -acc / _to_scalar(row[col])
    return {c: v for c, v in x.items() if v}


# ═══════════════════════════════════════════════
# Public operations
# ═══════════════════════════════════════════════

def rank(M: SparseMatrix) -> int:
    return len(row_echelon(M.row_dicts(), range(M.cols)))


def rank_and_kernel(M: SparseMatrix) -> Tuple[int, List[Vector]]:
    """Exact rank and a kernel basis (one vector per free column, free entry 1)."""
    pivots = row_echelon(M.row_dicts(), range(M.cols))
    pivot_cols = {c for c, _ in pivots}
    kernel: List[Vector] = []
    for free in range(M.cols):
        if free in pivot_cols:
            continue
        kernel.append(_back_substitute(pivots, {free: FIELD.one}))
    return len(pivots), kernel


def solve_linear(
    M: SparseMatrix,
    rhs: Mapping[int, Scalar],
    column_order: Optional[Sequence[int]] = None,
) -> Optional[Vector]:
    """
    A particular solution of M x = rhs, or NO_SOLUTION.

    Free variables are set to zero; ``column_order`` decides which unknowns
    become pivots (default: column index order).
    """
    rhs_col = M.cols
    rows = M.row_dicts()
    for r, b in rhs.items():
        if not 0 <= r < M.rows:
            raise ValueError(f"rhs index {r} outside {M.rows} rows")
        if b:
            rows[r][rhs_col] = b
    order = list(range(M.cols)) if column_order is None else list(column_order)
    pivots = row_echelon(rows, order + [rhs_col])
    if any(col == rhs_col for col, _ in pivots):
        return NO_SOLUTION
    solution = _back_substitute(pivots, {rhs_col: -FIELD.one})
    solution.pop(rhs_col, None)
    return solution


def quotient_data(
    ambient: int,
    generators: Sequence[Mapping[int, Scalar]],
    leading: int = 0,
    column_order: Optional[Sequence[int]] = None,
) -> Tuple[int, List[int], int]:
    """quotient_dimension plus the rank of the generators."""
    for g in generators:
        if any(not 0 <= c < ambient for c in g):
            raise ValueError("generator has a coordinate outside the ambient space")
    order = list(range(ambient)) if column_order is None else list(column_order)
    pivots = {c for c, _ in row_echelon(generators, order)}
    reps = [c for c in order if c >= leading and c not in pivots]
    return len(reps), reps, len(pivots)


def quotient_dimension(
    ambient: int,
    generators: Sequence[Mapping[int, Scalar]],
    leading: int = 0,
    column_order: Optional[Sequence[int]] = None,
) -> Tuple[int, List[int]]:
    """
    Dimension of (coordinates >= leading) modulo the generated subspace.

    Coordinates below ``leading`` are eliminated first, so the count is
    dim span(e_leading, ...) / (span ∩ image).  Representatives are the
    non-pivot coordinates in that range, in elimination order.
    """
    dim, reps, _ = quotient_data(ambient, generators, leading, column_order)
    return dim, reps


def in_span(generators: Sequence[Mapping[int, Scalar]], vector: Mapping[int, Scalar]) -> bool:
    if not any(vector.values()):
        return True
    cols = sorted({c for g in generators for c in g} | set(vector))
    before = len(row_echelon(generators, cols))
    after = len(row_echelon(list(generators) + [vector], cols))
    return before == after


class RowReducer:
    """
    Incrementally built echelon basis.

    ``add`` keeps a vector only if it is independent of the rows so far, which
    is how representative sets are selected greedily in a fixed order.
    """

    def __init__(self, column_order: Sequence[int]):
        self._position = {c: i for i, c in enumerate(column_order)}
        self._rows: Dict[int, PolyRow] = {}

    @classmethod
    def from_rows(cls, rows: Iterable[Mapping[int, Scalar]], column_order: Sequence[int]) -> "RowReducer":
        reducer = cls(column_order)
        for col, row in row_echelon(rows, column_order):
            reducer._rows[col] = row
        return reducer

    @property
    def rank(self) -> int:
        return len(self._rows)

    def reduce(self, vector: Mapping[int, Scalar]) -> PolyRow:
        row = _primitive(_clear_denominators(vector))
        for col in sorted(self._rows, key=self._position.__getitem__):
            if col in row:
                row = _combine(self._rows[col], row, col)
        return row

    def add(self, vector: Mapping[int, Scalar]) -> bool:
        row = self.reduce(vector)
        if not row:
            return False
        pivot = min(row, key=lambda c: self._position.get(c, len(self._position)))
        self._rows[pivot] = row
        return True


def dense_rank(rows: Sequence[Sequence[Scalar]]) -> int:
    """Rank of a small dense matrix via sympy's DomainMatrix (plain fraction arithmetic)."""
    if not rows or not rows[0]:
        return 0
    return DomainMatrix.from_list([list(r) for r in rows], SCALAR_DOMAIN).rank()
