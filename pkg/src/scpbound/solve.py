"""Cover construction: greedy heuristic and exact branch and bound.

Both operate on bit-packed rows and report 1-based column indices so
results can be pasted against the file formats directly. The exact
solver is meant for the small instances used to audit the bounds, not
for production covering.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InfeasibleInstanceError
from .matrix import BinaryMatrix, column_masks

__all__ = ["CoverSolution", "greedy_cover", "exact_cover", "DEFAULT_NODE_BUDGET"]

DEFAULT_NODE_BUDGET = 10**7


@dataclass(frozen=True)
class CoverSolution:
    """A verified cover: 1-based columns, their count, and provenance.

    status is "greedy" for the heuristic, "proved" for an exhausted
    branch-and-bound search, and "budget-exhausted" when the node budget
    stopped the search first (size is then only an upper bound on the
    optimum). nodes counts search-tree nodes, 0 for greedy.
    """

    columns: tuple[int, ...]
    size: int
    status: str
    nodes: int = 0

    def covers(self, matrix: BinaryMatrix) -> bool:
        mask = 0
        for j in self.columns:
            mask |= 1 << (j - 1)
        return all(row & mask for row in matrix.rows)


def _feasibility_check(matrix: BinaryMatrix) -> None:
    for i, row in enumerate(matrix.rows):
        if row == 0:
            raise InfeasibleInstanceError(i + 1)


def greedy_cover(matrix: BinaryMatrix) -> CoverSolution:
    """Repeatedly take the column covering the most uncovered rows.

    Ties break toward the lowest column index, which keeps runs
    reproducible across platforms.
    """
    _feasibility_check(matrix)
    cols = column_masks(matrix)
    uncovered = (1 << matrix.m) - 1
    chosen: list[int] = []
    while uncovered:
        best_j = -1
        best_gain = 0
        for j, cmask in enumerate(cols):
            gain = (cmask & uncovered).bit_count()
            if gain > best_gain:
                best_gain = gain
                best_j = j
        uncovered &= ~cols[best_j]
        chosen.append(best_j + 1)
    return CoverSolution(tuple(chosen), len(chosen), "greedy")


@dataclass
class _SearchState:
    cols: list[int]
    budget: int
    nodes: int = 0
    best_size: int = 0
    best: list[int] = field(default_factory=list)
    exhausted: bool = False


def _covering_columns(state: _SearchState, row_bit: int) -> list[int]:
    return [j for j, cmask in enumerate(state.cols) if cmask & row_bit]


def _branch(state: _SearchState, uncovered: int, chosen: list[int]) -> None:
    if state.exhausted:
        return
    state.nodes += 1
    if state.nodes > state.budget:
        state.exhausted = True
        return
    if not uncovered:
        if len(chosen) < state.best_size:
            state.best_size = len(chosen)
            state.best = list(chosen)
        return
    if len(chosen) + 1 >= state.best_size:
        return
    # branch on the hardest row: fewest columns cover it
    pick_cols: list[int] = []
    pick_count = len(state.cols) + 1
    rem = uncovered
    while rem:
        bit = rem & -rem
        rem ^= bit
        covering = _covering_columns(state, bit)
        if len(covering) < pick_count:
            pick_count = len(covering)
            pick_cols = covering
            if pick_count == 1:
                break
    pick_cols.sort(key=lambda j: -(state.cols[j] & uncovered).bit_count())
    for j in pick_cols:
        chosen.append(j)
        _branch(state, uncovered & ~state.cols[j], chosen)
        chosen.pop()
        if state.exhausted:
            return


def exact_cover(matrix: BinaryMatrix, node_budget: int = DEFAULT_NODE_BUDGET) -> CoverSolution:
    """Minimum cover by depth-first branch and bound.

    Starts from the greedy cover as incumbent, branches on the uncovered
    row with the fewest covering columns (columns tried by decreasing
    fresh coverage), and prunes any node whose partial cover plus one
    more column cannot beat the incumbent. Within the node budget the
    optimum is certified ("proved"); otherwise the incumbent is returned
    as "budget-exhausted".
    """
    seed = greedy_cover(matrix)
    state = _SearchState(cols=column_masks(matrix), budget=node_budget)
    state.best_size = seed.size
    state.best = [j - 1 for j in seed.columns]
    _branch(state, (1 << matrix.m) - 1, [])
    status = "budget-exhausted" if state.exhausted else "proved"
    columns = tuple(sorted(j + 1 for j in state.best))
    return CoverSolution(columns, len(columns), status, state.nodes)
