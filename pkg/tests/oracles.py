"""Slow, obviously-correct reference implementations used to cross-check the package.

Nothing here imports the package's algorithms; inputs and outputs are plain
Python lists, sets and tuples.
"""

from __future__ import annotations

from itertools import combinations, permutations, product


def closure(n, edges):
    """Reflexive-transitive closure by iterating relational composition to a fixpoint."""
    rel = {(i, i) for i in range(n)} | set(edges)
    while True:
        extra = {(a, d) for (a, b) in rel for (c, d) in rel if b == c} - rel
        if not extra:
            return rel
        rel |= extra


def bound_scan(leq):
    """Meet and join tables from leq by scanning every common bound; None if some pair has none."""
    n = len(leq)
    meet = [[None] * n for _ in range(n)]
    join = [[None] * n for _ in range(n)]
    for x in range(n):
        for y in range(n):
            lows = [z for z in range(n) if leq[z][x] and leq[z][y]]
            greatest = [z for z in lows if all(leq[w][z] for w in lows)]
            ups = [z for z in range(n) if leq[x][z] and leq[y][z]]
            least = [z for z in ups if all(leq[z][w] for w in ups)]
            if len(greatest) != 1 or len(least) != 1:
                return None
            meet[x][y] = greatest[0]
            join[x][y] = least[0]
    return meet, join


def has_m3_or_n5(meet, join, leq):
    """Search for a diamond or pentagon sublattice."""
    n = len(meet)
    for a, b, c in combinations(range(n), 3):
        m = {meet[a][b], meet[b][c], meet[a][c]}
        j = {join[a][b], join[b][c], join[a][c]}
        if len(m) == 1 and len(j) == 1 and not (m & {a, b, c}):
            return True
    for a in range(n):
        for c in range(n):
            if a == c or not leq[a][c]:
                continue
            for b in range(n):
                if leq[a][b] or leq[b][a] or leq[c][b] or leq[b][c]:
                    continue
                if meet[a][b] == meet[c][b] and join[a][b] == join[c][b]:
                    return True
    return False


def pseudocomplements(meet, leq, bottom):
    n = len(meet)
    out = []
    for x in range(n):
        zs = [z for z in range(n) if meet[x][z] == bottom]
        top = [z for z in zs if all(leq[w][z] for w in zs)]
        out.append(top[0] if len(top) == 1 else None)
    return out


def dual_pseudocomplements(join, leq, top):
    n = len(join)
    out = []
    for x in range(n):
        zs = [z for z in range(n) if join[x][z] == top]
        low = [z for z in zs if all(leq[z][w] for w in zs)]
        out.append(low[0] if len(low) == 1 else None)
    return out


def involutions(n):
    """Every involution of range(n) as a tuple."""

    def walk(i, g):
        if i == n:
            yield tuple(g)
            return
        if g[i] is not None:
            yield from walk(i + 1, g)
            return
        g[i] = i
        yield from walk(i + 1, g)
        g[i] = None
        for j in range(i + 1, n):
            if g[j] is None:
                g[i], g[j] = j, i
                yield from walk(i + 1, g)
                g[i] = g[j] = None

    yield from walk(0, [None] * n)


def kleene_negations(meet, join, leq):
    """Involutions that are antitone, satisfy ∼(x∧y) = ∼x∨∼y and x∧∼x ≤ y∨∼y."""
    n = len(meet)
    out = []
    for g in involutions(n):
        if any(leq[x][y] and not leq[g[y]][g[x]] for x in range(n) for y in range(n)):
            continue
        if any(g[meet[x][y]] != join[g[x]][g[y]] for x in range(n) for y in range(n)):
            continue
        if any(not leq[meet[x][g[x]]][join[y][g[y]]] for x in range(n) for y in range(n)):
            continue
        out.append(g)
    return sorted(out)


def lower(succ, X):
    return frozenset(x for x, nb in succ.items() if nb <= X)


def upper(succ, X):
    return frozenset(x for x, nb in succ.items() if nb & X)


def rough_pairs(points, rel):
    succ = {x: frozenset(y for y in points if (x, y) in rel) for x in points}
    out = set()
    for k in range(len(points) + 1):
        for X in combinations(points, k):
            X = frozenset(X)
            out.add((lower(succ, X), upper(succ, X)))
    return out


def posets(n):
    """Every partial order on range(n) as a frozenset of pairs (labelled)."""
    off = [(i, j) for i in range(n) for j in range(n) if i != j]
    for choice in product((0, 1), repeat=len(off)):
        rel = {(i, i) for i in range(n)} | {p for p, c in zip(off, choice) if c}
        if any((j, i) in rel for (i, j) in rel if i != j):
            continue
        if any((a, d) not in rel for (a, b) in rel for (c, d) in rel if b == c):
            continue
        yield frozenset(rel)


def is_kv(n, rel, g):
    if any((g[y], g[x]) not in rel for (x, y) in rel):
        return False
    if any(g[g[x]] != x for x in range(n)):
        return False
    if any((x, g[x]) not in rel and (g[x], x) not in rel for x in range(n)):
        return False
    strict = {(x, y) for (x, y) in rel if x != y}
    return not any((y, z) in strict for (x, y) in strict for z in range(n))


def kv_classes(n):
    """Isomorphism classes of Kleene–Varlet spaces on exactly n points, by brute force."""
    classes = set()
    for rel in posets(n):
        for g in involutions(n):
            if not is_kv(n, rel, g):
                continue
            best = None
            for p in permutations(range(n)):
                key = (
                    tuple(sorted((p[a], p[b]) for a, b in rel)),
                    tuple(p[g[q]] for q in sorted(range(n), key=lambda i: p[i])),
                )
                if best is None or key < best:
                    best = key
            classes.add(best)
    return classes


def irredundant_classes(n):
    """Isomorphism classes of irredundant coverings of range(n), by brute force."""
    subsets = [frozenset(s) for k in range(1, n + 1) for s in combinations(range(n), k)]
    full = frozenset(range(n))
    classes = set()
    for k in range(1, n + 1):
        for fam in combinations(subsets, k):
            if frozenset().union(*fam) != full:
                continue
            if any(frozenset().union(*(b for b in fam if b is not blk)) == full for blk in fam):
                continue
            best = min(
                tuple(sorted(tuple(sorted(p[x] for x in b)) for b in fam)) for p in permutations(range(n))
            )
            classes.add(best)
    return classes


def embeddings(src, dst):
    """Every injective map preserving 0, 1, ∨, ∧, ∼, *; algebras as dicts of lists."""
    n, m = src["n"], dst["n"]
    found = []
    for image in permutations(range(m), n):
        if image[src["bottom"]] != dst["bottom"] or image[src["top"]] != dst["top"]:
            continue
        ok = all(
            image[src["join"][x][y]] == dst["join"][image[x]][image[y]]
            and image[src["meet"][x][y]] == dst["meet"][image[x]][image[y]]
            for x in range(n)
            for y in range(n)
        )
        ok = ok and all(
            image[src["neg"][x]] == dst["neg"][image[x]] and image[src["star"][x]] == dst["star"][image[x]]
            for x in range(n)
        )
        if ok:
            found.append(image)
    return found


def as_plain(a):
    """Flatten a PKAlgebra into the dict shape ``embeddings`` expects."""
    l = a.lattice
    return {
        "n": l.n,
        "bottom": l.bottom,
        "top": l.top,
        "meet": l.meet.tolist(),
        "join": l.join.tolist(),
        "neg": list(a.neg),
        "star": list(a.star),
    }


def prime_filters_by_subsets(meet, join, n):
    """Every subset of the carrier that is a proper nonempty prime filter, as frozensets."""
    out = []
    for bitsv in range(1, (1 << n) - 1):
        F = {x for x in range(n) if bitsv >> x & 1}
        if any(meet[x][y] not in F for x in F for y in F):
            continue
        if any(join[x][y] not in F for x in F for y in range(n)):
            continue  # upward closure: x ≤ x ∨ y
        if any(join[x][y] in F and x not in F and y not in F for x in range(n) for y in range(n)):
            continue
        out.append(frozenset(F))
    return out
