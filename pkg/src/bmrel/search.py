"""Exact backtracking enumeration and counting of R_{alpha,beta}.

The search keeps the set of covered cross pairs as an integer bitmask,
always branches on the least uncovered pair, and only considers squares
whose four corner edges are distinct.  Each square is pre-indexed by the
pairs it covers.
"""

from __future__ import annotations

import logging
import time
from collections.abc import Iterator
from dataclasses import dataclass
from enum import Enum, auto
from multiprocessing import Pool

from bmrel.errors import BudgetExceededError
from bmrel.models import BMRelation, GeometricSquare
from bmrel.squares import all_squares, corner_edges, has_distinct_corners

logger = logging.getLogger(__name__)

# Published |R_{alpha,beta}| for alpha <= beta.
KNOWN_COUNTS: dict[tuple[int, int], int] = {
    (1, 1): 3,
    (1, 2): 15,
    (1, 3): 105,
    (1, 4): 945,
    (1, 5): 10395,
    (1, 6): 135135,
    (1, 7): 2027025,
    (1, 8): 34459425,
    (1, 9): 654729075,
    (2, 2): 541,
    (2, 3): 35235,
    (2, 4): 3690009,
    (2, 5): 570847095,
    (3, 3): 27712191,
}

Prefix = tuple[int, ...]


class SearchMode(Enum):
    MATERIALIZE = auto()
    COUNT_ONLY = auto()


def known_count(alpha: int, beta: int) -> int | None:
    """Look up a published count, using |R_{alpha,beta}| = |R_{beta,alpha}|."""
    return KNOWN_COUNTS.get((min(alpha, beta), max(alpha, beta)))


@dataclass(frozen=True)
class SquareIndex:
    """Usable squares of GS_{alpha,beta} with their corner-pair bitmasks.

    Attributes:
        alpha: Number of horizontal generators.
        beta: Number of vertical generators.
        squares: Squares with four distinct corner edges, in canonical order.
        masks: Bitmask of covered pair indices per square.
        by_pair: For each pair index, the squares covering it.
    """

    alpha: int
    beta: int
    squares: tuple[GeometricSquare, ...]
    masks: tuple[int, ...]
    by_pair: tuple[tuple[int, ...], ...]

    @classmethod
    def build(cls, alpha: int, beta: int) -> SquareIndex:
        usable = [s for s in all_squares(alpha, beta) if has_distinct_corners(s)]
        masks = []
        by_pair: list[list[int]] = [[] for _ in range(4 * alpha * beta)]
        for i, s in enumerate(usable):
            mask = 0
            for edge in corner_edges(s):
                p = edge.pair_index(beta)
                mask |= 1 << p
                by_pair[p].append(i)
            masks.append(mask)
        return cls(alpha, beta, tuple(usable), tuple(masks), tuple(tuple(b) for b in by_pair))

    @property
    def full_mask(self) -> int:
        return (1 << (4 * self.alpha * self.beta)) - 1

    def covered_by(self, prefix: Prefix) -> int:
        covered = 0
        for i in prefix:
            covered |= self.masks[i]
        return covered

    def extensions(self, covered: int) -> list[int]:
        """Squares that cover the least uncovered pair and nothing already covered."""
        pair = (~covered & (covered + 1)).bit_length() - 1
        masks = self.masks
        return [i for i in self.by_pair[pair] if not covered & masks[i]]

    def relation(self, ids: Prefix) -> BMRelation:
        return BMRelation(self.alpha, self.beta, tuple(self.squares[i] for i in sorted(ids)))


def _collect(
    index: SquareIndex,
    covered: int,
    chosen: list[int],
    out: list[Prefix],
    cap: int | None,
) -> None:
    if covered == index.full_mask:
        out.append(tuple(sorted(chosen)))
        if cap is not None and len(out) > cap:
            raise BudgetExceededError(f"more than {cap} solutions")
        return
    for i in index.extensions(covered):
        chosen.append(i)
        _collect(index, covered | index.masks[i], chosen, out, cap)
        chosen.pop()


def _count(index: SquareIndex, covered: int, cache: dict[int, int]) -> int:
    # The subtree below a state depends only on the covered mask.
    if covered == index.full_mask:
        return 1
    hit = cache.get(covered)
    if hit is not None:
        return hit
    total = 0
    for i in index.extensions(covered):
        total += _count(index, covered | index.masks[i], cache)
    cache[covered] = total
    return total


def solve_prefix(
    index: SquareIndex, prefix: Prefix, mode: SearchMode, cap: int | None = None
) -> list[Prefix] | int:
    """Complete one search branch: all solutions extending ``prefix``, or their number."""
    covered = index.covered_by(prefix)
    if mode is SearchMode.COUNT_ONLY:
        return _count(index, covered, {})
    out: list[Prefix] = []
    _collect(index, covered, list(prefix), out, cap)
    return out


_WORKER_INDEX: SquareIndex | None = None


def _init_worker(alpha: int, beta: int) -> None:
    global _WORKER_INDEX
    _WORKER_INDEX = SquareIndex.build(alpha, beta)


def _run_branch(task: tuple[Prefix, SearchMode, int | None]) -> list[Prefix] | int:
    assert _WORKER_INDEX is not None
    prefix, mode, cap = task
    return solve_prefix(_WORKER_INDEX, prefix, mode, cap)


class RelationSearch:
    """Enumerate or count R_{alpha,beta}.

    Work is split by the branch taken at depth 0, and at depth 1 when there
    are more workers than top-level branches.  Workers share nothing; their
    results are merged in canonical order, so the output does not depend
    on ``jobs``.

    Args:
        alpha: Number of horizontal generators.
        beta: Number of vertical generators.
        jobs: Worker processes (1 runs in-process).
        max_solutions: Optional cap; exceeding it raises BudgetExceededError.
    """

    def __init__(
        self,
        alpha: int,
        beta: int,
        jobs: int = 1,
        max_solutions: int | None = None,
    ) -> None:
        if alpha < 1:
            raise ValueError(f"alpha must be >= 1, got {alpha}")
        if beta < 1:
            raise ValueError(f"beta must be >= 1, got {beta}")
        if jobs < 1:
            raise ValueError(f"jobs must be >= 1, got {jobs}")
        if max_solutions is not None and max_solutions < 1:
            raise ValueError(f"max_solutions must be >= 1, got {max_solutions}")
        self.alpha = alpha
        self.beta = beta
        self.jobs = jobs
        self.max_solutions = max_solutions
        self.index = SquareIndex.build(alpha, beta)

    def branches(self) -> list[Prefix]:
        """Search prefixes handed to workers, in search-tree order."""
        frontier: list[Prefix] = [()]
        for _depth in range(2):
            expanded: list[Prefix] = []
            for prefix in frontier:
                covered = self.index.covered_by(prefix)
                if covered == self.index.full_mask:
                    expanded.append(prefix)
                    continue
                expanded.extend(prefix + (i,) for i in self.index.extensions(covered))
            frontier = expanded
            if len(frontier) >= self.jobs:
                break
        return frontier

    def _run(self, mode: SearchMode) -> list[list[Prefix] | int]:
        branches = self.branches()
        logger.info(
            "R(%d,%d): %d usable squares, %d branches, %d jobs, mode=%s",
            self.alpha, self.beta, len(self.index.squares), len(branches), self.jobs, mode.name,
        )
        tasks = [(p, mode, self.max_solutions) for p in branches]
        if self.jobs == 1:
            return [solve_prefix(self.index, *task) for task in tasks]
        with Pool(
            min(self.jobs, len(tasks)), initializer=_init_worker, initargs=(self.alpha, self.beta)
        ) as pool:
            return pool.map(_run_branch, tasks)

    def solution_ids(self) -> list[Prefix]:
        """All solutions as sorted tuples of square ids, in canonical order."""
        start = time.perf_counter()
        merged: list[Prefix] = []
        for part in self._run(SearchMode.MATERIALIZE):
            assert isinstance(part, list)
            merged.extend(part)
            if self.max_solutions is not None and len(merged) > self.max_solutions:
                raise BudgetExceededError(f"more than {self.max_solutions} solutions")
        merged.sort()
        logger.info(
            "R(%d,%d): %d relations in %.2fs",
            self.alpha, self.beta, len(merged), time.perf_counter() - start,
        )
        return merged

    def relations(self) -> Iterator[BMRelation]:
        for ids in self.solution_ids():
            yield self.index.relation(ids)

    def count(self) -> int:
        start = time.perf_counter()
        total = 0
        for part in self._run(SearchMode.COUNT_ONLY):
            assert isinstance(part, int)
            total += part
        if self.max_solutions is not None and total > self.max_solutions:
            raise BudgetExceededError(f"{total} solutions exceed the cap {self.max_solutions}")
        logger.info(
            "R(%d,%d) = %d in %.2fs", self.alpha, self.beta, total, time.perf_counter() - start
        )
        return total


def enumerate_relations(
    alpha: int, beta: int, *, jobs: int = 1, max_solutions: int | None = None
) -> Iterator[BMRelation]:
    """Yield every (alpha, beta)-BM relation once, in canonical order."""
    return RelationSearch(alpha, beta, jobs, max_solutions).relations()


def count_relations(
    alpha: int, beta: int, *, jobs: int = 1, max_solutions: int | None = None
) -> int:
    """|R_{alpha,beta}| as an exact integer."""
    return RelationSearch(alpha, beta, jobs, max_solutions).count()
