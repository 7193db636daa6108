"""Kleene–Varlet spaces and the algebras of their upsets."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Sequence

import numpy as np

from .algebra import (
    PKAlgebra,
    UnaryTable,
    axiom_report,
    dual_pseudocomplement_table,
    plus_from_neg,
    pseudocomplement_table,
)
from .errors import CapExceeded, InvalidSpace, NotAnUpset, PreconditionViolated, TheoremViolation
from .order import (
    Lattice,
    Poset,
    UpsetFamily,
    Verdict,
    all_upsets,
    bits,
    is_disjoint_short_chains,
    mask_of,
    poset_from_leq,
)

MAX_ENUMERATED_POINTS = 8
KV_CONDITIONS = ("J1", "J2", "J3", "J4", "FIXEDPOINT_ISOLATION")


@dataclass(frozen=True)
class KVSpace:
    poset: Poset
    g: UnaryTable

    def __post_init__(self):
        g = tuple(int(v) for v in self.g)
        if len(g) != self.poset.n or any(not 0 <= v < self.poset.n for v in g):
            raise ValueError("g must be total on the carrier")
        object.__setattr__(self, "g", g)

    @property
    def n(self) -> int:
        return self.poset.n

    @property
    def labels(self) -> tuple[str, ...]:
        return self.poset.labels

    def image(self, subset: int) -> int:
        """g[A]."""
        return mask_of(self.g[x] for x in bits(subset))

    def describe(self) -> str:
        pairs = ", ".join(f"{self.labels[x]}->{self.labels[self.g[x]]}" for x in range(self.n))
        return f"KVSpace({self.n} points; g: {pairs})"


@dataclass(frozen=True)
class KVReport:
    labels: tuple[str, ...]
    verdicts: dict

    @property
    def ok(self) -> bool:
        return all(self.verdicts.values())

    def __getitem__(self, name: str) -> Verdict:
        return self.verdicts[name]

    def lines(self) -> list[str]:
        out = []
        for name, v in self.verdicts.items():
            line = f"{name}: {'PASS' if v else 'FAIL'}"
            if not v and v.witness is not None:
                line += " [counterexample: " + ", ".join(self.labels[i] for i in v.witness) + "]"
            out.append(line)
        return out


def validate_kv(poset: Poset, g: Sequence[int]) -> KVReport:
    """Check (J1)–(J4) and the isolation of fixed points; every failure is reported."""
    n = poset.n
    g = np.asarray(g, dtype=np.int64)
    if g.shape != (n,) or (n and (g.min() < 0 or g.max() >= n)):
        raise ValueError("g must be total on the carrier")
    leq = poset.leq
    verdicts = {}

    def first(bad):
        idx = np.argwhere(bad)
        return Verdict(True) if not len(idx) else Verdict(False, tuple(int(v) for v in idx[0]))

    # J1: x ≤ y implies g(y) ≤ g(x)
    verdicts["J1"] = first(leq & ~leq[np.ix_(g, g)].T)
    verdicts["J2"] = first(g[g] != np.arange(n))
    verdicts["J3"] = first(~(leq[np.arange(n), g] | leq[g, np.arange(n)]))
    # J4: no x < y < z
    strict = leq & ~np.eye(n, dtype=bool)
    three = strict[:, :, None] & strict[None, :, :]
    verdicts["J4"] = first(three)
    comparable = (leq | leq.T) & ~np.eye(n, dtype=bool)
    fixed = g == np.arange(n)
    verdicts["FIXEDPOINT_ISOLATION"] = first(fixed[:, None] & comparable)
    return KVReport(poset.labels, verdicts)


def kv_space(poset: Poset, g: Sequence[int]) -> KVSpace:
    """Validated constructor."""
    report = validate_kv(poset, g)
    if not report.ok:
        raise InvalidSpace(report)
    return KVSpace(poset, tuple(g))


def _require_valid(k: KVSpace) -> None:
    report = validate_kv(k.poset, k.g)
    if not report.ok:
        raise InvalidSpace(report)


def levels(k: KVSpace) -> tuple[int, int]:
    """``({x : x ≤ g(x)}, {x : g(x) < x})`` as bit vectors."""
    _require_valid(k)
    lower = mask_of(x for x in range(k.n) if k.poset.leq[x, k.g[x]])
    return lower, k.poset.full & ~lower


def _check_upset(k: KVSpace, subset: int) -> None:
    if not k.poset.is_upset(subset):
        raise NotAnUpset(f"{sorted(k.poset.members(subset))} is not upward closed")


def neg_on_upsets(k: KVSpace, subset: int) -> int:
    """∼A = {x : g(x) ∉ A}."""
    _check_upset(k, subset)
    return mask_of(x for x in range(k.n) if not subset >> k.g[x] & 1)


def star_on_upsets(k: KVSpace, subset: int) -> int:
    """A* = {x : ↑x ∩ A = ∅}."""
    _check_upset(k, subset)
    return mask_of(x for x in range(k.n) if not k.poset.up[x] & subset)


def stonean_star(k: KVSpace, subset: int) -> int:
    """A* = (A ∪ g[A])ᶜ, valid when the space is a disjoint union of short chains."""
    if not is_disjoint_short_chains(k.poset):
        raise PreconditionViolated("DISJOINT_SHORT_CHAINS", "space has a point comparable with two others")
    _check_upset(k, subset)
    return k.poset.full & ~(subset | k.image(subset))


def upset_label(labels: Sequence[str], mask: int) -> str:
    return "{" + ",".join(labels[i] for i in bits(mask)) + "}"


@dataclass(frozen=True, eq=False)
class UpsetAlgebra:
    space: KVSpace
    family: UpsetFamily
    algebra: PKAlgebra

    def element(self, subset: int) -> int:
        return self.family.index(subset)


def upset_lattice(p: Poset, cap: int = 20) -> tuple[UpsetFamily, Lattice]:
    """(U(X), ∪, ∩, ∅, X) with elements labelled by their point sets."""
    family = all_upsets(p, cap)
    members = family.members
    m = len(members)
    leq = np.array([[a & ~b == 0 for b in members] for a in members], dtype=bool).reshape(m, m)
    labels = [upset_label(p.labels, a) for a in members]
    poset = poset_from_leq(labels, leq)
    index = family.index
    meet = np.array([[index(a & b) for b in members] for a in members], dtype=np.int64).reshape(m, m)
    join = np.array([[index(a | b) for b in members] for a in members], dtype=np.int64).reshape(m, m)
    return family, Lattice(poset, meet, join, index(0), index(p.full))


def upset_algebra(k: KVSpace, check: bool = True) -> UpsetAlgebra:
    """The regular pK-algebra of upsets of a Kleene–Varlet space.

    With ``check`` the result is tested against DM1, DM2, K, M, D, and the
    formula star/plus against the lattice's own pseudocomplements.
    """
    _require_valid(k)
    family, lattice = upset_lattice(k.poset)
    neg = tuple(family.index(neg_on_upsets(k, a)) for a in family)
    star = tuple(family.index(star_on_upsets(k, a)) for a in family)
    plus = plus_from_neg(neg, star)
    algebra = PKAlgebra(lattice, neg, star, plus)
    if check:
        if star != pseudocomplement_table(lattice):
            raise TheoremViolation("↑-formula star is not the pseudocomplement")
        if plus != dual_pseudocomplement_table(lattice):
            raise TheoremViolation("∼(∼A)* is not the dual pseudocomplement")
        report = axiom_report(algebra, axioms=("DM1", "DM2", "K", "M", "D", "EQ6"))
        if not report.ok:
            raise TheoremViolation("upset algebra fails: " + "; ".join(report.lines()))
    return UpsetAlgebra(k, family, algebra)


@dataclass(frozen=True)
class FrameReport:
    ok: bool
    failures: tuple  # (label, maximal points above, minimal points below)

    def __bool__(self):
        return self.ok


def is_double_stone_frame(p: Poset) -> FrameReport:
    """Each point lies below exactly one maximal and above exactly one minimal point."""
    maximal = mask_of(x for x in range(p.n) if p.up[x] == 1 << x)
    minimal = mask_of(x for x in range(p.n) if p.down[x] == 1 << x)
    bad = []
    for x in range(p.n):
        above = (p.up[x] & maximal).bit_count()
        below = (p.down[x] & minimal).bit_count()
        if above != 1 or below != 1:
            bad.append((p.labels[x], above, below))
    return FrameReport(not bad, tuple(bad))


# -- enumeration ------------------------------------------------------------
#
# In a valid space fixed points are isolated, and every other point x pairs
# with g(x) across the two levels. Chains have length at most two, so the
# only strict relations are lower < upper, and antitonicity makes
# "l_i < u_j" symmetric in i, j. A space is therefore a number of fixed
# points plus a reflexive symmetric graph on the pairs.


def _graph_code(m: int, edges: int, perm: Sequence[int], pairs) -> int:
    code = 0
    for bit, (i, j) in enumerate(pairs):
        if edges >> bit & 1:
            a, b = sorted((perm[i], perm[j]))
            code |= 1 << pairs.index((a, b))
    return code


def _canonical_graph(m: int, edges: int) -> int:
    pairs = list(combinations(range(m), 2))
    return min(_graph_code(m, edges, perm, pairs) for perm in permutations(range(m)))


def space_from_graph(fixed: int, m: int, edges: int) -> KVSpace:
    """Fixed points ``c1..``, lower points ``l1..`` and upper points ``u1..``;
    bit ``e`` of ``edges`` links pair ``i`` and ``j`` for the ``e``-th pair ``i<j``."""
    labels = [f"c{i + 1}" for i in range(fixed)] + [f"l{i + 1}" for i in range(m)] + [f"u{i + 1}" for i in range(m)]
    n = fixed + 2 * m
    leq = np.eye(n, dtype=bool)
    lo, up = fixed, fixed + m
    for i in range(m):
        leq[lo + i, up + i] = True
    for bit, (i, j) in enumerate(combinations(range(m), 2)):
        if edges >> bit & 1:
            leq[lo + i, up + j] = leq[lo + j, up + i] = True
    g = list(range(fixed)) + [up + i for i in range(m)] + [lo + i for i in range(m)]
    return KVSpace(poset_from_leq(labels, leq), tuple(g))


def decompose(k: KVSpace) -> tuple[int, int, int]:
    """``(fixed points, pairs, canonical graph code)`` of a valid space."""
    _require_valid(k)
    fixed = [x for x in range(k.n) if k.g[x] == x]
    lower = [x for x in range(k.n) if k.g[x] != x and k.poset.leq[x, k.g[x]]]
    m = len(lower)
    edges = 0
    for bit, (i, j) in enumerate(combinations(range(m), 2)):
        if k.poset.leq[lower[i], k.g[lower[j]]]:
            edges |= 1 << bit
    return len(fixed), m, _canonical_graph(m, edges)


def canonical_form(k: KVSpace) -> tuple[int, int, int]:
    """Isomorphism invariant that is complete on valid spaces."""
    return decompose(k)


def brute_canonical_form(poset: Poset, g: Sequence[int]) -> tuple:
    """Least (order table, g table) over every relabelling; exponential, for small checks."""
    n = poset.n
    best = None
    leq = poset.leq
    for perm in permutations(range(n)):
        inv = [0] * n
        for old, new in enumerate(perm):
            inv[new] = old
        table = tuple(bool(leq[inv[a], inv[b]]) for a in range(n) for b in range(n))
        gt = tuple(perm[g[inv[a]]] for a in range(n))
        key = (table, gt)
        if best is None or key < best:
            best = key
    return best


def enumerate_kv_spaces(max_points: int) -> list[KVSpace]:
    """One space per isomorphism class with at most ``max_points`` points, the
    empty space excluded; ordered by size, pair count, then graph code."""
    if max_points > MAX_ENUMERATED_POINTS:
        raise CapExceeded(max_points, MAX_ENUMERATED_POINTS)
    out = []
    for n in range(1, max_points + 1):
        for m in range(n // 2 + 1):
            fixed = n - 2 * m
            pairs = m * (m - 1) // 2
            codes = sorted({_canonical_graph(m, e) for e in range(1 << pairs)})
            out.extend(space_from_graph(fixed, m, c) for c in codes)
    return out


def profile(k: KVSpace) -> str:
    """Short shape description: fixed points, pairs, and edges between pairs."""
    fixed, m, code = decompose(k)
    return f"fixed={fixed} pairs={m} links={code.bit_count()}"


__all__ = [
    "KV_CONDITIONS",
    "KVReport",
    "KVSpace",
    "FrameReport",
    "UpsetAlgebra",
    "brute_canonical_form",
    "canonical_form",
    "decompose",
    "enumerate_kv_spaces",
    "is_double_stone_frame",
    "kv_space",
    "levels",
    "neg_on_upsets",
    "profile",
    "space_from_graph",
    "star_on_upsets",
    "stonean_star",
    "upset_algebra",
    "upset_lattice",
    "validate_kv",
]
