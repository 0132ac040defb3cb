"""Independent reference implementations used only to check the real ones.

These deliberately avoid the library's code paths: the LCS oracle is a
plain dynamic program, the coverage oracle is boolean interval marking,
and the cosine oracle is pure-Python arithmetic.
"""

from __future__ import annotations

import math


def brute_force_lcs(a: str, b: str) -> tuple[int, int, int]:
    """Longest common substring via DP; returns (start_a, start_b, length),
    earliest start_a then start_b on ties."""
    best = (0, 0, 0)
    prev = [0] * (len(b) + 1)
    for i in range(1, len(a) + 1):
        cur = [0] * (len(b) + 1)
        for j in range(1, len(b) + 1):
            if a[i - 1] == b[j - 1]:
                cur[j] = prev[j - 1] + 1
                length = cur[j]
                if length > best[2]:
                    best = (i - length, j - length, length)
        prev = cur
    return best


def interval_union_covers(length: int,
                          spans: list[tuple[int, int]]) -> bool:
    """True iff spans are sorted, pairwise disjoint, and tile [0, length)."""
    marks = [0] * length
    prev_end = 0
    for start, end in spans:
        if start < prev_end or start >= end or end > length:
            return False
        for i in range(start, end):
            marks[i] += 1
        prev_end = end
    return all(m == 1 for m in marks)


def cosine_oracle(u: list[float], v: list[float]) -> float:
    dot = sum(x * y for x, y in zip(u, v))
    nu = math.sqrt(sum(x * x for x in u))
    nv = math.sqrt(sum(y * y for y in v))
    if nu == 0.0 or nv == 0.0:
        return 0.0
    return dot / (nu * nv)


def brute_force_ranking(query: list[float],
                        entries: list[tuple[str, list[float]]],
                        k: int) -> list[tuple[str, float]]:
    scored = [(cid, cosine_oracle(query, vec)) for cid, vec in entries]
    scored.sort(key=lambda t: (-t[1], t[0]))
    return scored[:k]
