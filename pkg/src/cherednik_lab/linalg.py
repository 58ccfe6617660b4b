"""Exact sparse operators on labelled bases, plus dense row reduction.

An operator stores one sparse column per source label: the coordinates of
the image of that basis vector in the target basis.  Composition therefore
costs only the nonzero entries.  Labels are arbitrary hashable values
(permutations, spin/exponent keys, ...), and two operators built on
differently truncated bases can still be compared through ``same_mapping``,
which works with labelled coordinates instead of positions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Hashable, Sequence

from .scalars import Scalar

__all__ = ["OperatorMatrix", "rref", "add_into"]


def add_into(acc: dict, key: Hashable, coeff: Scalar) -> None:
    """Accumulate coeff on key, dropping exact zeros."""
    new = acc.get(key, 0) + coeff
    if new:
        acc[key] = new
    else:
        acc.pop(key, None)


@dataclass(frozen=True)
class OperatorMatrix:
    """Exact matrix with explicit source and target basis labels.

    ``cols[j]`` maps target row index -> coefficient, no zeros stored.
    """

    source: tuple
    target: tuple
    cols: tuple[dict, ...]

    @classmethod
    def from_action(
        cls,
        source: Sequence,
        target: Sequence,
        image: Callable[[Hashable], dict],
    ) -> "OperatorMatrix":
        """Build from a function mapping a source label to {target label: coeff}."""
        index = {lab: i for i, lab in enumerate(target)}
        cols = []
        for lab in source:
            col: dict = {}
            for out_lab, coeff in image(lab).items():
                if not coeff:
                    continue
                if out_lab not in index:
                    raise KeyError(f"image label {out_lab!r} not in target basis")
                add_into(col, index[out_lab], coeff)
            cols.append(col)
        return cls(tuple(source), tuple(target), tuple(cols))

    @classmethod
    def identity(cls, basis: Sequence) -> "OperatorMatrix":
        basis = tuple(basis)
        return cls(basis, basis, tuple({i: Fraction(1)} for i in range(len(basis))))

    @classmethod
    def zero(cls, source: Sequence, target: Sequence) -> "OperatorMatrix":
        return cls(tuple(source), tuple(target), tuple({} for _ in source))

    def compose(self, other: "OperatorMatrix") -> "OperatorMatrix":
        """self o other (apply other first)."""
        if other.target != self.source:
            raise ValueError("operator composition: basis mismatch")
        cols = []
        for col in other.cols:
            out: dict = {}
            for mid, c in col.items():
                for row, d in self.cols[mid].items():
                    add_into(out, row, c * d)
            cols.append(out)
        return OperatorMatrix(other.source, self.target, tuple(cols))

    def _check_aligned(self, other: "OperatorMatrix") -> None:
        if self.source != other.source or self.target != other.target:
            raise ValueError("operator arithmetic: basis mismatch")

    def add(self, other: "OperatorMatrix") -> "OperatorMatrix":
        self._check_aligned(other)
        cols = []
        for a, b in zip(self.cols, other.cols):
            col = dict(a)
            for row, c in b.items():
                add_into(col, row, c)
            cols.append(col)
        return OperatorMatrix(self.source, self.target, tuple(cols))

    def sub(self, other: "OperatorMatrix") -> "OperatorMatrix":
        return self.add(other.scale(Fraction(-1)))

    def scale(self, c: Scalar) -> "OperatorMatrix":
        if not c:
            return OperatorMatrix.zero(self.source, self.target)
        return OperatorMatrix(
            self.source,
            self.target,
            tuple({row: c * v for row, v in col.items()} for col in self.cols),
        )

    def apply(self, vec: dict) -> dict:
        """Apply to a vector given as {source label: coeff}."""
        index = {lab: i for i, lab in enumerate(self.source)}
        out: dict = {}
        for lab, c in vec.items():
            for row, d in self.cols[index[lab]].items():
                add_into(out, self.target[row], c * d)
        return out

    def column(self, j: int) -> dict:
        """Column j as {target label: coeff}."""
        return {self.target[row]: c for row, c in self.cols[j].items()}

    def is_zero(self) -> bool:
        return all(not col for col in self.cols)

    def same_mapping(self, other: "OperatorMatrix") -> bool:
        """Equality as linear maps, tolerating different target truncations."""
        if self.source != other.source:
            return False
        return all(
            self.column(j) == other.column(j) for j in range(len(self.source))
        )

    def first_discrepancy(self, other: "OperatorMatrix"):
        """(source label, self column, other column) of the first mismatch."""
        if self.source != other.source:
            return ("<source bases differ>", None, None)
        for j in range(len(self.source)):
            a, b = self.column(j), other.column(j)
            if a != b:
                return (self.source[j], a, b)
        return None

    def to_dense(self) -> list[list[Scalar]]:
        dense = [[Fraction(0)] * len(self.source) for _ in self.target]
        for j, col in enumerate(self.cols):
            for row, c in col.items():
                dense[row][j] = c
        return dense


def rref(rows: list[list[Scalar]]) -> tuple[list[list[Scalar]], list[int]]:
    """Reduced row echelon form with exact pivoting; returns (rows, pivot cols)."""
    mat = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    ncols = len(mat[0]) if mat else 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        pv = mat[r][c]
        mat[r] = [x / pv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots
