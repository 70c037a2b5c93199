"""Exact linear algebra over the rationals.

Entries are ``fractions.Fraction``; matrices are sparse maps ``(row, col) ->
Fraction`` with no stored zeros. Elimination keeps a reduced row echelon form
whose rows are sparse dicts, which is what the monomial-indexed constraint
systems of the cochain spaces want.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .errors import DimensionMismatchError

Rational = Fraction
QVector = Tuple[Fraction, ...]
SparseRow = Dict[int, Fraction]


@dataclass(frozen=True)
class QMatrix:
    rows: int
    cols: int
    entries: Mapping[Tuple[int, int], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean: Dict[Tuple[int, int], Fraction] = {}
        for (r, c), v in self.entries.items():
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise DimensionMismatchError(
                    f"entry ({r}, {c}) outside a {self.rows}x{self.cols} matrix"
                )
            v = Fraction(v)
            if v:
                clean[(r, c)] = v
        object.__setattr__(self, "entries", clean)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: Optional[int] = None) -> "QMatrix":
        ncols = cols if cols is not None else (len(rows[0]) if rows else 0)
        entries = {}
        for r, row in enumerate(rows):
            if len(row) != ncols:
                raise DimensionMismatchError("ragged rows")
            for c, v in enumerate(row):
                if v:
                    entries[(r, c)] = Fraction(v)
        return cls(len(rows), ncols, entries)

    @classmethod
    def from_columns(cls, columns: Sequence[Mapping[int, Fraction]], rows: int) -> "QMatrix":
        """Build from sparse columns (``row -> value`` maps)."""
        entries = {}
        for c, col in enumerate(columns):
            for r, v in col.items():
                if v:
                    entries[(r, c)] = v
        return cls(rows, len(columns), entries)

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls(n, n, {(i, i): Fraction(1) for i in range(n)})

    def row_dicts(self) -> List[SparseRow]:
        out: List[SparseRow] = [dict() for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def apply(self, v: Sequence) -> QVector:
        if len(v) != self.cols:
            raise DimensionMismatchError(f"vector of length {len(v)} for {self.cols} columns")
        out = [Fraction(0)] * self.rows
        for (r, c), x in self.entries.items():
            if v[c]:
                out[r] += x * v[c]
        return tuple(out)

    def transpose(self) -> "QMatrix":
        return QMatrix(self.cols, self.rows, {(c, r): v for (r, c), v in self.entries.items()})


class RowSpace:
    """Incrementally maintained reduced row echelon basis of a subspace of ℚ^n.

    ``add`` returns whether the vector enlarged the space; ``contains`` is the
    span test used by greedy generator/relation extraction and by the
    image-complement step of the cohomology computation.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivots: Dict[int, SparseRow] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: Mapping[int, Fraction]) -> SparseRow:
        work = {c: Fraction(v) for c, v in row.items() if v}
        # pivot rows carry no other pivot column, so one pass suffices
        for c in [c for c in work if c in self.pivots]:
            coef = work.get(c)
            if not coef:
                continue
            for cc, vv in self.pivots[c].items():
                nv = work.get(cc, 0) - coef * vv
                if nv:
                    work[cc] = nv
                else:
                    work.pop(cc, None)
        return work

    def add(self, row: Mapping[int, Fraction]) -> bool:
        work = self.reduce(row)
        if not work:
            return False
        p = min(work)
        inv = 1 / work[p]
        new = {c: v * inv for c, v in work.items()}
        for prow in self.pivots.values():
            coef = prow.get(p)
            if coef:
                for cc, vv in new.items():
                    nv = prow.get(cc, 0) - coef * vv
                    if nv:
                        prow[cc] = nv
                    else:
                        prow.pop(cc, None)
        self.pivots[p] = new
        return True

    def contains(self, row: Mapping[int, Fraction]) -> bool:
        return not self.reduce(row)


def _echelon(M: QMatrix) -> RowSpace:
    space = RowSpace(M.cols)
    for row in M.row_dicts():
        if row:
            space.add(row)
    return space


def rank(M: QMatrix) -> int:
    return _echelon(M).rank


def kernel_basis(M: QMatrix) -> List[QVector]:
    """Basis of the right null space, one vector per free column."""
    space = _echelon(M)
    basis: List[QVector] = []
    for free in range(M.cols):
        if free in space.pivots:
            continue
        v = [Fraction(0)] * M.cols
        v[free] = Fraction(1)
        for p, prow in space.pivots.items():
            coef = prow.get(free)
            if coef:
                v[p] = -coef
        basis.append(tuple(v))
    return basis


def solve(M: QMatrix, b: Sequence) -> Optional[QVector]:
    """Some x with M·x = b, or None when the system is inconsistent."""
    if len(b) != M.rows:
        raise DimensionMismatchError(f"right side of length {len(b)} for {M.rows} rows")
    aug = M.cols
    space = RowSpace(M.cols + 1)
    for r, row in enumerate(M.row_dicts()):
        if b[r]:
            row[aug] = Fraction(b[r])
        if row:
            space.add(row)
    if aug in space.pivots:
        return None
    x = [Fraction(0)] * M.cols
    for p, prow in space.pivots.items():
        x[p] = prow.get(aug, Fraction(0))
    return tuple(x)


def sparse(v: Iterable) -> SparseRow:
    return {i: Fraction(x) for i, x in enumerate(v) if x}


def dense(row: Mapping[int, Fraction], n: int) -> QVector:
    out = [Fraction(0)] * n
    for i, x in row.items():
        out[i] = x
    return tuple(out)
