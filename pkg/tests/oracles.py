"""Slow, obviously-correct reference computations used by the tests."""
from __future__ import annotations

import itertools


def brute_is_tree(heads):
    n = len(heads)
    if any(not 0 <= h <= n or h == i for i, h in enumerate(heads, start=1)):
        return False
    for i in range(1, n + 1):
        node, steps = i, 0
        while node != 0:
            node = heads[node - 1]
            steps += 1
            if steps > n:
                return False
    return True


def strictly_between(x, a, b):
    lo, hi = min(a, b), max(a, b)
    return lo < x < hi


def brute_cross(a, b):
    # exactly one endpoint of b strictly inside a, and endpoints not shared
    if set(a) & set(b):
        return False
    inside = sum(strictly_between(x, *a) for x in b)
    return inside == 1


def brute_crossing_pairs(heads):
    arcs = [(h, d) for d, h in enumerate(heads, start=1)]
    return {frozenset((a, b)) for a, b in itertools.combinations(arcs, 2) if brute_cross(a, b)}


def brute_projective(heads):
    return not brute_crossing_pairs(heads)


def replay_arcs_arc_hybrid(seq, n):
    """Arcs built by an arc-hybrid sequence; asserts every step is legal."""
    stack, buf, arcs = [0], list(range(1, n + 1)), set()
    for a in seq:
        if a == "SH":
            assert buf
            stack.append(buf.pop(0))
        elif a == "LA":
            assert buf and len(stack) > 1
            arcs.add((buf[0], stack.pop()))
        elif a == "RA":
            assert len(stack) > 1
            d = stack.pop()
            arcs.add((stack[-1], d))
        else:
            raise AssertionError(a)
    assert stack == [0] and not buf
    return arcs


def replay_arcs_covington(seq, n):
    """Arcs built by a Covington sequence with implicit trailing NO-ARCs."""
    arcs, j, i = set(), 0, None
    for a in seq:
        if a == "SH":
            j += 1
            i = j - 1
            continue
        assert i is not None and i >= 0
        if a == "LA":
            assert i >= 1
            arcs.add((j, i))
        elif a == "RA":
            arcs.add((i, j))
        i -= 1
    assert j == n
    return arcs


def gold_arcs(heads):
    return {(h, d) for d, h in enumerate(heads, start=1)}


def expected_errors_by_bisection(counts, errors, target):
    """Per-tag expected errors min(C_t, g * E_t) with g solved by bisection."""
    def total(g):
        return sum(min(counts[t], g * errors[t]) for t in counts)
    lo, hi = 0.0, 1.0
    while total(hi) < target and hi < 1e9:
        hi *= 2
    for _ in range(200):
        mid = (lo + hi) / 2
        if total(mid) < target:
            lo = mid
        else:
            hi = mid
    return {t: min(counts[t], hi * errors[t]) for t in counts}


def two_colorable(arcs, cross):
    for colors in itertools.product((1, 2), repeat=len(arcs)):
        if all(not (colors[i] == colors[j] and cross(arcs[i], arcs[j]))
               for i, j in itertools.combinations(range(len(arcs)), 2)):
            return True
    return False
