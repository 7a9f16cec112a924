"""Exact analysis of the Hadamard-Rademacher walk ``X_k = H D_k X_{k-1}``.

Matrices are kept as ``M * 2^(-f/2)`` with ``M`` an integer matrix, reduced
so that ``M`` has an odd entry (or ``f < 2``).  That form is unique, so the
pair ``(f, M)`` is an exact hashable key; no floating point is used anywhere
in this module.  Probabilities are ``fractions.Fraction``.
"""
from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import asdict, dataclass
from fractions import Fraction

STATE_CAP = 200_000


class NotMixedError(ValueError):
    pass


@dataclass(frozen=True)
class GroupElement:
    half_exp: int          # value = entries * 2 ** (-half_exp / 2)
    entries: tuple         # row-major integer tuple-of-tuples

    @property
    def n(self):
        return len(self.entries)

    def is_orthogonal(self):
        n = self.n
        scale = 2 ** self.half_exp
        for i in range(n):
            for j in range(n):
                s = sum(self.entries[i][t] * self.entries[j][t] for t in range(n))
                if s != (scale if i == j else 0):
                    return False
        return True

    def as_float(self):
        import numpy as np
        return np.array(self.entries, dtype=float) * 2.0 ** (-self.half_exp / 2)


def _reduce(f, M):
    while f >= 2 and all(v % 2 == 0 for row in M for v in row):
        M = [[v // 2 for v in row] for row in M]
        f -= 2
    return GroupElement(f, tuple(tuple(row) for row in M))


def identity(n):
    return GroupElement(0, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))


def _hadamard_int(n):
    bits = n.bit_length() - 1
    if n < 1 or (1 << bits) != n:
        raise ValueError(f"n={n} is not a power of 2")
    return [[-1 if bin(i & j).count("1") % 2 else 1 for j in range(n)] for i in range(n)]


def generators(n):
    """All ``2^n`` matrices ``H D`` as integer matrices with ``half_exp = log2 n``."""
    H = _hadamard_int(n)
    p = n.bit_length() - 1
    gens = []
    for signs in itertools.product((1, -1), repeat=n):
        gens.append((p, [[H[i][j] * signs[j] for j in range(n)] for i in range(n)]))
    return gens


def step(gen, X):
    """Left-multiply the state ``X`` by the generator ``gen``."""
    p, G = gen
    n = X.n
    M = [[sum(G[i][t] * X.entries[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
    return _reduce(X.half_exp + p, M)


def _bfs(n, cap):
    gens = generators(n)
    start = identity(n)
    dist = {start: 0}
    queue = deque([start])
    edges = []
    while queue:
        u = queue.popleft()
        for g in gens:
            v = step(g, u)
            edges.append((u, v))
            if v not in dist:
                if len(dist) >= cap:
                    raise ValueError(f"state space exceeds cap {cap}")
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist, edges


def enumerate_states(n, cap=STATE_CAP):
    """Closure of the identity under left multiplication by every ``H D``."""
    return set(_bfs(n, cap)[0])


def cayley_distances(n, cap=STATE_CAP):
    """BFS distance from the identity for every reachable state."""
    return _bfs(n, cap)[0]


def _push(law, gens):
    share = Fraction(1, len(gens))
    nxt = {}
    for state, mass in law.items():
        part = mass * share
        for g in gens:
            v = step(g, state)
            nxt[v] = nxt.get(v, 0) + part
    return nxt


def exact_distribution(n, steps):
    """Exact law of ``X_steps``: mass split evenly over the ``2^n`` successors."""
    gens = generators(n)
    law = {identity(n): Fraction(1)}
    for _ in range(steps):
        law = _push(law, gens)
    return law


@dataclass(frozen=True)
class ChainReport:
    n: int
    state_count: int
    period: int
    cayley_diameter: int
    mixing_step: int
    class_uniform_step: int
    per_step_supports: tuple
    distance_histogram: tuple

    def to_dict(self):
        d = asdict(self)
        d["per_step_supports"] = list(self.per_step_supports)
        d["distance_histogram"] = list(self.distance_histogram)
        return d


def analyze(n, max_steps=64, cap=STATE_CAP, require_mixing=True):
    """State count, period, Cayley diameter and mixing step of the walk.

    A period-p walk never settles on one law, so mixing is measured on the
    average of the last p laws: ``mixing_step`` is the first k for which the
    average of the laws at steps k-p+1..k is exactly uniform on every state.
    ``class_uniform_step`` is the first k at which the law of ``X_k`` alone is
    uniform on a whole periodic class.  Without exact mixing inside
    ``max_steps`` this raises :class:`NotMixedError`, or, with
    ``require_mixing=False``, reports ``mixing_step=None``.
    """
    dist, edges = _bfs(n, cap)
    states = len(dist)
    period = 0
    for u, v in edges:
        period = math.gcd(period, dist[u] + 1 - dist[v])
    period = abs(period) or 1
    diameter = max(dist.values())
    hist = [0] * (diameter + 1)
    for d in dist.values():
        hist[d] += 1

    gens = generators(n)
    uniform = Fraction(1, states)
    laws = [{identity(n): Fraction(1)}]
    class_step = mixing = None
    gap = None
    for k in range(1, max_steps + 1):
        laws.append(_push(laws[-1], gens))
        law = laws[-1]
        if class_step is None and len(law) * period == states and all(p * states == period for p in law.values()):
            class_step = k
        if k + 1 >= period:
            avg = {}
            for past in laws[k + 1 - period:]:
                for s, p in past.items():
                    avg[s] = avg.get(s, 0) + p / period
            gap = (states - len(avg)) * uniform + sum(abs(p - uniform) for p in avg.values())
            if gap == 0:
                mixing = k
                break
    if mixing is None and require_mixing:
        raise NotMixedError(
            f"period-averaged law not uniform after {max_steps} steps "
            f"(total variation {float(gap) / 2:.3e})")

    return ChainReport(
        n=n,
        state_count=states,
        period=period,
        cayley_diameter=diameter,
        mixing_step=mixing,
        class_uniform_step=class_step,
        per_step_supports=tuple(len(law) for law in laws),
        distance_histogram=tuple(hist),
    )
