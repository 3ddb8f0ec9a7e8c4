"""Decide whether a weighted envy-free allocation exists and compute one.

The search maintains a shrinking pool of live (agent, house) assignments.
Whenever some agent's best surviving assignments, with values scaled by
the owning agent's weight, all belong to other agents, that whole top
group is discarded: handing any of those houses to those owners would
leave the agent envious no matter what it receives itself.  Once every
agent's top group contains one of its own assignments, a candidate
bipartite graph over those favourites is matched; an agent-saturating
matching is a weighted envy-free allocation, otherwise a minimal Hall
violator pinpoints further assignments to discard.  The pool only ever
shrinks, so the loop terminates; if it drops below one assignment per
agent, no weighted envy-free allocation exists.

`solve_wef` runs an integer-arithmetic engine with incremental caches;
`solve_wef_reference` restates the same search directly on top of the
public operations and is used to cross-check the engine in tests.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Callable, Iterator, NamedTuple

from .bipartite import maximum_matching
from .errors import EmptyAssignmentSet, MatchingSaturating
from .model import Allocation, Instance


class VirtualAssignment(NamedTuple):
    """One potential assignment of a house to an agent."""

    agent: int
    house: int


class VirtualAssignmentSet:
    """Mutable pool of live (agent, house) assignments; removal only."""

    __slots__ = ("n", "m", "_rows", "_size")

    def __init__(self, n: int, m: int, rows: list[set[int]] | None = None):
        self.n = n
        self.m = m
        self._rows = rows if rows is not None else [set() for _ in range(n)]
        self._size = sum(len(r) for r in self._rows)

    @classmethod
    def full(cls, n: int, m: int) -> "VirtualAssignmentSet":
        return cls(n, m, [set(range(m)) for _ in range(n)])

    @property
    def size(self) -> int:
        return self._size

    def contains(self, agent: int, house: int) -> bool:
        return house in self._rows[agent]

    def houses_for(self, agent: int) -> tuple[int, ...]:
        return tuple(sorted(self._rows[agent]))

    def pairs(self) -> Iterator[VirtualAssignment]:
        for agent in range(self.n):
            for house in sorted(self._rows[agent]):
                yield VirtualAssignment(agent, house)

    def remove(self, agent: int, house: int) -> None:
        self._rows[agent].remove(house)
        self._size -= 1

    def remove_all(self, assignments) -> None:
        for agent, house in assignments:
            self.remove(agent, house)

    def copy(self) -> "VirtualAssignmentSet":
        return VirtualAssignmentSet(self.n, self.m, [set(r) for r in self._rows])


def virtual_value(inst: Instance, viewer: int, assignment: VirtualAssignment) -> Fraction:
    """Value viewer places on giving `assignment.house` to `assignment.agent`:
    the viewer's utility for the house divided by the receiving agent's weight."""
    agent, house = assignment
    return inst.utilities[viewer][house] / inst.weights[agent]


def top_set(
    inst: Instance, viewer: int, pool: VirtualAssignmentSet
) -> set[VirtualAssignment]:
    """All live assignments attaining the viewer's maximum value, ties included."""
    if pool.size == 0:
        raise EmptyAssignmentSet("top set of an empty assignment pool")
    best: Fraction | None = None
    tops: set[VirtualAssignment] = set()
    for assignment in pool.pairs():
        value = inst.utilities[viewer][assignment.house] / inst.weights[assignment.agent]
        if best is None or value > best:
            best = value
            tops = {assignment}
        elif value == best:
            tops.add(assignment)
    return tops


def prune_dominated(
    inst: Instance,
    pool: VirtualAssignmentSet,
    on_remove: Callable[[VirtualAssignmentSet], None] | None = None,
) -> VirtualAssignmentSet:
    """Discard dominated top groups until every agent's top set meets its own row.

    Scans agents in ascending index order, removes the first triggering
    agent's whole top set, and rescans.  Returns the pool at the fixed
    point, which may be empty.  `on_remove` is a test instrumentation hook
    called after each removal.
    """
    while pool.size:
        for viewer in range(inst.n):
            tops = top_set(inst, viewer, pool)
            if any(t.agent == viewer for t in tops):
                continue
            pool.remove_all(tops)
            if on_remove is not None:
                on_remove(pool)
            break
        else:
            break
    return pool


@dataclass(frozen=True)
class CandidateGraph:
    """Bipartite graph of each agent's surviving favourite assignments."""

    neighbors: tuple[tuple[int, ...], ...]
    house_count: int

    @property
    def agent_count(self) -> int:
        return len(self.neighbors)


def build_candidate_graph(inst: Instance, pool: VirtualAssignmentSet) -> CandidateGraph:
    """Edges (i, h) where assigning h to i attains agent i's current maximum."""
    rows = []
    for viewer in range(inst.n):
        if pool.size == 0:
            rows.append(())
            continue
        tops = top_set(inst, viewer, pool)
        rows.append(tuple(sorted(t.house for t in tops if t.agent == viewer)))
    return CandidateGraph(tuple(rows), inst.m)


def n_saturating_matching(
    graph: CandidateGraph,
) -> tuple[Allocation | None, list[int | None]]:
    """Match every agent to a distinct favourite house if possible.

    Returns (allocation, matching) when a matching covers all agents, else
    (None, matching) where the matching is maximum and reused by the Hall
    violator search.  Deterministic for a fixed graph.
    """
    matching = maximum_matching(graph.neighbors, graph.house_count)
    if all(house is not None for house in matching):
        return Allocation(tuple(matching)), matching
    return None, matching


@dataclass(frozen=True)
class HallViolator:
    """Agent set with fewer candidate neighbours than members."""

    agents: frozenset[int]
    houses: frozenset[int]


def minimal_hall_violator(
    graph: CandidateGraph, matching: list[int | None]
) -> HallViolator:
    """Minimal violating agent set, grown by alternating reachability.

    Starts from the lowest-index unmatched agent and alternates candidate
    edges (agent to house) with matching edges (house to owner).  Every
    reached house is matched, so the set has exactly one more agent than
    neighbour and no violating proper subset.
    """
    unmatched = [a for a, h in enumerate(matching) if h is None]
    if not unmatched:
        raise MatchingSaturating("matching already covers every agent")
    owner_of = {house: agent for agent, house in enumerate(matching) if house is not None}
    agents = {unmatched[0]}
    houses: set[int] = set()
    frontier = [unmatched[0]]
    while frontier:
        next_frontier = []
        for agent in frontier:
            for house in graph.neighbors[agent]:
                if house in houses:
                    continue
                houses.add(house)
                owner = owner_of.get(house)
                if owner is not None and owner not in agents:
                    agents.add(owner)
                    next_frontier.append(owner)
        frontier = next_frontier
    assert len(agents) > len(houses)
    return HallViolator(frozenset(agents), frozenset(houses))


@dataclass
class SolveStats:
    """Trace counters for one solver run."""

    prune_steps: int = 0
    violators_removed: int = 0
    rounds: int = 0


def solve_wef(inst: Instance) -> Allocation | None:
    """Return a weighted envy-free allocation, or None when none exists.

    A returned allocation is weighted envy-free and Pareto optimal among
    all weighted envy-free allocations; None means no such allocation
    exists for the instance.
    """
    return solve_wef_traced(inst)[0]


def solve_wef_traced(inst: Instance) -> tuple[Allocation | None, SolveStats]:
    """solve_wef plus trace counters used by the command line report."""
    stats = SolveStats()
    engine = _Engine(inst)
    n = inst.n
    while engine.live >= n:
        stats.rounds += 1
        engine.prune(stats)
        if engine.live < n:
            break
        graph = CandidateGraph(engine.candidate_rows(), inst.m)
        if __debug__:
            _check_shared_favourites(engine, graph)
        allocation, matching = n_saturating_matching(graph)
        if allocation is not None:
            return allocation, stats
        violator = minimal_hall_violator(graph, matching)
        engine.remove_pairs(
            [(a, h) for a in sorted(violator.agents) for h in graph.neighbors[a]]
        )
        stats.violators_removed += 1
    return None, stats


def solve_wef_reference(
    inst: Instance,
    on_remove: Callable[[VirtualAssignmentSet], None] | None = None,
) -> Allocation | None:
    """The same search written directly over the public operations.

    Slower than solve_wef but easy to audit; tests cross-check the two on
    random instances, where they must return identical results.
    """
    pool = VirtualAssignmentSet.full(inst.n, inst.m)
    while pool.size >= inst.n:
        prune_dominated(inst, pool, on_remove=on_remove)
        if pool.size < inst.n:
            break
        graph = build_candidate_graph(inst, pool)
        allocation, matching = n_saturating_matching(graph)
        if allocation is not None:
            return allocation
        violator = minimal_hall_violator(graph, matching)
        pool.remove_all(
            (a, h) for a in sorted(violator.agents) for h in graph.neighbors[a]
        )
        if on_remove is not None:
            on_remove(pool)
    return None


# -- integer engine ----------------------------------------------------------

def _scaled_integers(inst: Instance) -> tuple[list[list[int]], list[int]]:
    """Clear denominators: utilities and weights each scaled by one common
    positive factor, which changes no comparison the search performs."""
    u_den = lcm(*(v.denominator for row in inst.utilities for v in row), 1)
    w_den = lcm(*(w.denominator for w in inst.weights), 1)
    utilities = [
        [v.numerator * (u_den // v.denominator) for v in row] for row in inst.utilities
    ]
    weights = [w.numerator * (w_den // w.denominator) for w in inst.weights]
    return utilities, weights


class _Engine:
    """Incremental state for the assignment-pool search, all in integers.

    Per column it tracks the live agents grouped by weight and the current
    minimum live weight; a viewer's best value over the whole pool is then
    the best utility/min-weight ratio over columns, cached with the column
    that attains it and recomputed lazily when that column degrades.
    """

    def __init__(self, inst: Instance):
        self.n = inst.n
        self.m = inst.m
        self.U, self.W = _scaled_integers(inst)
        n, m = self.n, self.m
        self.rows: list[set[int]] = [set(range(m)) for _ in range(n)]
        self.live = n * m
        self.col_groups: list[dict[int, set[int]]] = []
        for _ in range(m):
            groups: dict[int, set[int]] = {}
            for agent, w in enumerate(self.W):
                groups.setdefault(w, set()).add(agent)
            self.col_groups.append(groups)
        min_w = min(self.W)
        self.col_min: list[int | None] = [min_w] * m
        self.own_best: list[int | None] = [max(row) for row in self.U]
        self.best_num = [0] * n
        self.best_den = [1] * n
        self.witness: list[int | None] = [None] * n
        self.watchers: list[set[int]] = [set() for _ in range(m)]
        self.stale = [False] * n
        for viewer in range(n):
            self._refresh(viewer)

    def _refresh(self, viewer: int) -> None:
        old = self.witness[viewer]
        if old is not None:
            self.watchers[old].discard(viewer)
        row = self.U[viewer]
        best_num, best_den, best_house = -1, 1, None
        for house in range(self.m):
            den = self.col_min[house]
            if den is None:
                continue
            num = row[house]
            if num * best_den > best_num * den:
                best_num, best_den, best_house = num, den, house
        if best_house is None:
            self.witness[viewer] = None
        else:
            self.best_num[viewer] = best_num
            self.best_den[viewer] = best_den
            self.witness[viewer] = best_house
            self.watchers[best_house].add(viewer)
        self.stale[viewer] = False

    def _triggered(self, viewer: int) -> bool:
        # caller guarantees freshness; witness None only when the pool is empty
        if self.witness[viewer] is None:
            return False
        own = self.own_best[viewer]
        if own is None:
            return True
        return own * self.best_den[viewer] < self.best_num[viewer] * self.W[viewer]

    def first_triggered(self) -> int | None:
        if self.live == 0:
            return None
        for viewer in range(self.n):
            if self.stale[viewer]:
                self._refresh(viewer)
            if self._triggered(viewer):
                return viewer
        return None

    def top_pairs(self, viewer: int) -> list[tuple[int, int]]:
        """The viewer's full argmax group; requires a fresh cache."""
        best_num, best_den = self.best_num[viewer], self.best_den[viewer]
        pairs = []
        if best_num == 0:
            # every live assignment is worth 0 to this viewer
            for agent in range(self.n):
                for house in self.rows[agent]:
                    pairs.append((agent, house))
            return pairs
        row = self.U[viewer]
        for house in range(self.m):
            den = self.col_min[house]
            if den is not None and row[house] * best_den == best_num * den:
                for agent in self.col_groups[house][den]:
                    pairs.append((agent, house))
        return pairs

    def remove_pairs(self, pairs) -> None:
        for agent, house in pairs:
            row = self.rows[agent]
            row.remove(house)
            self.live -= 1
            if self.own_best[agent] == self.U[agent][house]:
                self.own_best[agent] = max(
                    (self.U[agent][x] for x in row), default=None
                )
            groups = self.col_groups[house]
            weight = self.W[agent]
            group = groups[weight]
            group.remove(agent)
            if not group:
                del groups[weight]
                if weight == self.col_min[house]:
                    self.col_min[house] = min(groups) if groups else None
                    for viewer in self.watchers[house]:
                        self.stale[viewer] = True

    def prune(self, stats: SolveStats) -> None:
        while True:
            viewer = self.first_triggered()
            if viewer is None:
                return
            self.remove_pairs(self.top_pairs(viewer))
            stats.prune_steps += 1

    def candidate_rows(self) -> tuple[tuple[int, ...], ...]:
        rows = []
        for viewer in range(self.n):
            if self.stale[viewer]:
                self._refresh(viewer)
            best_num, best_den = self.best_num[viewer], self.best_den[viewer]
            weight = self.W[viewer]
            row = self.U[viewer]
            rows.append(
                tuple(
                    h
                    for h in sorted(self.rows[viewer])
                    if row[h] * best_den == best_num * weight
                )
            )
        return tuple(rows)


def _check_shared_favourites(engine: _Engine, graph: CandidateGraph) -> None:
    """Debug invariant: when two agents share a candidate house, any of them
    valuing it positively has the same, minimal weight among the sharers."""
    sharers: dict[int, list[int]] = {}
    for agent, row in enumerate(graph.neighbors):
        assert row, "candidate graph row empty at a pruning fixed point"
        for house in row:
            sharers.setdefault(house, []).append(agent)
    for house, agents in sharers.items():
        positive = [a for a in agents if engine.U[a][house] > 0]
        if not positive:
            continue
        w0 = engine.W[positive[0]]
        assert all(engine.W[a] == w0 for a in positive)
        assert all(engine.W[a] >= w0 for a in agents)
