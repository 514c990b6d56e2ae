from dataclasses import dataclass
from typing import List, Sequence, Tuple

from errors import SingularSystemError
from exact.rational_function import RF_ZERO, RationalFunction

Row = Tuple[RationalFunction, ...]


@dataclass(frozen=True)
class LinearSystem:
    """Square system matrix @ x = rhs over the field of rational functions in p."""

    matrix: Tuple[Row, ...]
    rhs: Tuple[RationalFunction, ...]

    def __post_init__(self) -> None:
        size = len(self.rhs)
        if size < 1:
            raise ValueError("linear system needs at least one unknown")
        if len(self.matrix) != size or any(len(row) != size for row in self.matrix):
            raise ValueError("linear system dimensions are inconsistent")

    @classmethod
    def build(
        cls, matrix: Sequence[Sequence[RationalFunction]], rhs: Sequence[RationalFunction]
    ) -> "LinearSystem":
        return cls(tuple(tuple(row) for row in matrix), tuple(rhs))

    @property
    def size(self) -> int:
        return len(self.rhs)

    def residuals(self, solution: Sequence[RationalFunction]) -> List[RationalFunction]:
        """matrix @ solution - rhs, row by row; all zero for an exact solution."""
        out = []
        for row, target in zip(self.matrix, self.rhs):
            total = RF_ZERO
            for coefficient, value in zip(row, solution):
                if not coefficient.is_zero:
                    total = total + coefficient * value
            out.append(total - target)
        return out


def solve_linear_system(system: LinearSystem) -> List[RationalFunction]:
    """Gaussian elimination with back substitution.

    Each column pivots on the nonzero entry of lowest combined degree, which keeps the
    intermediate rational functions small.
    """
    n = system.size
    a = [list(row) + [target] for row, target in zip(system.matrix, system.rhs)]

    for col in range(n):
        candidates = [r for r in range(col, n) if not a[r][col].is_zero]
        if not candidates:
            raise SingularSystemError()
        pivot_row = min(candidates, key=lambda r: (a[r][col].degree, r))
        a[col], a[pivot_row] = a[pivot_row], a[col]

        inverse = a[col][col].reciprocal()
        a[col] = [entry * inverse if not entry.is_zero else entry for entry in a[col]]
        for r in range(col + 1, n):
            factor = a[r][col]
            if factor.is_zero:
                continue
            a[r] = [
                a[r][k] - factor * a[col][k] if not a[col][k].is_zero else a[r][k]
                for k in range(n + 1)
            ]

    x: List[RationalFunction] = [RF_ZERO] * n
    for row in reversed(range(n)):
        total = a[row][n]
        for k in range(row + 1, n):
            if not a[row][k].is_zero:
                total = total - a[row][k] * x[k]
        x[row] = total
    return x
