"""Brute-force reference implementations used to cross-check the fast paths.

These deliberately share no code with the dynamic programs they check.
"""
from __future__ import annotations

import heapq
import itertools
from collections import deque

from .lengths import Weights
from .words import MonoidWord, Word


def edit_bfs_distances(source: tuple[int, ...], rank: int, max_len: int) -> dict[tuple[int, ...], int]:
    """Unit-cost insert/delete distances from ``source`` to every string of length <= ``max_len``."""
    dist = {source: 0}
    queue = deque([source])
    while queue:
        s = queue.popleft()
        d = dist[s]
        nbrs = [s[:i] + s[i + 1 :] for i in range(len(s))]
        if len(s) < max_len:
            nbrs += [s[:i] + (c,) + s[i:] for i in range(len(s) + 1) for c in range(1, rank + 1)]
        for t in nbrs:
            if t not in dist:
                dist[t] = d + 1
                queue.append(t)
    return dist


def edit_bfs(u: MonoidWord, v: MonoidWord) -> int:
    """Unit-cost edit distance by breadth-first search over insert/delete moves."""
    dist = edit_bfs_distances(u.codes, u.alphabet.rank, len(u) + len(v))
    return dist[v.codes]


def edit_dijkstra(u: MonoidWord, v: MonoidWord, w: Weights) -> float:
    """Weighted insert/delete distance by Dijkstra over strings of bounded length."""
    max_len = len(u) + len(v)
    rank = u.alphabet.rank
    best = {u.codes: 0.0}
    heap = [(0.0, u.codes)]
    while heap:
        d, s = heapq.heappop(heap)
        if s == v.codes:
            return d
        if d > best[s]:
            continue
        moves = [(s[:i] + s[i + 1 :], w.of(s[i])) for i in range(len(s))]
        if len(s) < max_len:
            moves += [(s[:i] + (c,) + s[i:], w.of(c)) for i in range(len(s) + 1) for c in range(1, rank + 1)]
        for t, cost in moves:
            nd = d + cost
            if nd < best.get(t, float("inf")):
                best[t] = nd
                heapq.heappush(heap, (nd, t))
    raise RuntimeError("target unreachable")


def nonoverlap_exhaustive(pattern: Word, g: Word) -> int:
    """Largest set of pairwise disjoint occurrences, trying every subset."""
    p, s = pattern.codes, g.codes
    m = len(p)
    occ = [i for i in range(len(s) - m + 1) if s[i : i + m] == p]
    for size in range(len(occ), 0, -1):
        for subset in itertools.combinations(occ, size):
            if all(b - a >= m for a, b in zip(subset, subset[1:])):
                return size
    return 0


def rotation_minimal_cyclic_length(x: Word) -> int:
    """Shortest length among free reductions of all cyclic rotations of ``x``."""
    codes = x.codes
    if not codes:
        return 0
    best = len(codes)
    for r in range(len(codes)):
        best = min(best, len(Word(codes[r:] + codes[:r], x.alphabet)))
    return best


def rotations_of(x: Word) -> set[str]:
    s = str(x)
    return {s[i:] + s[:i] for i in range(max(len(s), 1))}


def ball_count(radius: int, rank: int) -> int:
    """Ball size by the no-backtracking recurrence: ``1, 2r, 2r(2r-1), ...`` per sphere."""
    total, sphere = 1, 1
    for r in range(1, radius + 1):
        sphere = 2 * rank if r == 1 else sphere * (2 * rank - 1)
        total += sphere
    return total
