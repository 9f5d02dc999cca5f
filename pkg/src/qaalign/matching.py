"""Exact maximum-weight bipartite matching with a deterministic tie-break.

Among all matchings of maximum total weight, the one whose sorted edge
list is lexicographically smallest is returned. Both criteria are decided
in a single run by augmenting with pair-valued gains (weight, tie) compared
lexicographically: the tie component gives the edge at lex rank k (1-based,
over the sorted edge list) the value B**(E-k) with B = E+2, so the first
lex difference between equal-weight matchings always dominates the rest.

Zero-weight edges are dropped up front: adding one never changes the total
and only lex-grows the edge list, so the preferred optimum never uses them.
With all weights positive, no optimal sorted edge list is a prefix of
another, which is what makes the positional encoding sound.

Weights are exact fractions throughout; no floating point is compared.
"""

from __future__ import annotations

from fractions import Fraction

Edge = tuple[str, str, Fraction]
Gain = tuple[Fraction, int]

_ZERO: Gain = (Fraction(0), 0)


def _neg(g: Gain) -> Gain:
    return (-g[0], -g[1])


def _add(a: Gain, b: Gain) -> Gain:
    return (a[0] + b[0], a[1] + b[1])


def max_weight_matching(edges: list[Edge]) -> tuple[list[tuple[str, str]], Fraction]:
    """Returns (sorted edge list, total weight) of the preferred optimum.

    Edges must be unique per (left, right) with weights in [0, 1]; weight 0
    edges are ignored.
    """
    seen: set[tuple[str, str]] = set()
    live: list[tuple[str, str, Fraction]] = []
    for left, right, w in edges:
        if (left, right) in seen:
            raise ValueError(f"duplicate edge ({left!r}, {right!r})")
        seen.add((left, right))
        if w < 0:
            raise ValueError(f"negative weight on edge ({left!r}, {right!r})")
        if w > 0:
            live.append((left, right, w))

    live.sort(key=lambda e: (e[0], e[1]))
    n_edges = len(live)
    base = n_edges + 2
    gain: dict[tuple[str, str], Gain] = {
        (l, r): (w, base ** (n_edges - 1 - k))
        for k, (l, r, w) in enumerate(live)
    }

    lefts = sorted({l for l, _, _ in live})
    rights = sorted({r for _, r, _ in live})
    by_left: dict[str, list[str]] = {l: [] for l in lefts}
    for l, r, _ in live:
        by_left[l].append(r)

    match_l: dict[str, str] = {}
    match_r: dict[str, str] = {}

    while True:
        path = _best_augmenting_path(lefts, rights, by_left, gain, match_l, match_r)
        if path is None:
            break
        # path alternates left, right, left, right, ...; flip edges along it
        for i in range(0, len(path) - 1, 2):
            match_l[path[i]] = path[i + 1]
            match_r[path[i + 1]] = path[i]

    chosen = sorted(match_l.items())
    total = sum((gain[e][0] for e in chosen), Fraction(0))
    return chosen, total


def _best_augmenting_path(
    lefts: list[str],
    rights: list[str],
    by_left: dict[str, list[str]],
    gain: dict[tuple[str, str], Gain],
    match_l: dict[str, str],
    match_r: dict[str, str],
) -> list[str] | None:
    """Maximum-gain alternating path from a free left node to a free right
    node (Bellman-Ford; matched edges traverse right-to-left with negated
    gain). None when no path improves on (0, 0)."""
    dist: dict[str, Gain] = {l: _ZERO for l in lefts if l not in match_l}
    parent: dict[str, str] = {}
    n_nodes = len(lefts) + len(rights)

    for _ in range(n_nodes):
        changed = False
        for l in lefts:
            dl = dist.get(l)
            if dl is None:
                continue
            for r in by_left[l]:
                if match_l.get(l) == r:
                    continue
                cand = _add(dl, gain[(l, r)])
                if r not in dist or cand > dist[r]:
                    dist[r] = cand
                    parent[r] = l
                    changed = True
        for r, l in match_r.items():
            dr = dist.get(r)
            if dr is None:
                continue
            cand = _add(dr, _neg(gain[(l, r)]))
            if l not in dist or cand > dist[l]:
                dist[l] = cand
                parent[l] = r
                changed = True
        if not changed:
            break

    best_sink: str | None = None
    best: Gain = _ZERO
    for r in rights:
        if r in match_r or r not in dist:
            continue
        if dist[r] > best:
            best = dist[r]
            best_sink = r

    if best_sink is None:
        return None
    path = [best_sink]
    while path[-1] in parent:
        path.append(parent[path[-1]])
    path.reverse()
    return path
