"""Finite posets and lattices.

Elements are dense indices into ``labels``; subsets of a carrier are Python
ints used as bit vectors (bit ``i`` set means element ``i`` is present).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import (
    CapExceeded,
    CycleDetected,
    DuplicateLabel,
    InvalidOrder,
    NotALattice,
    UnknownLabel,
)

DEFAULT_UPSET_CAP = 20
MAX_CARRIER = 1024


def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask``, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << int(i)
    return m


def lex_key(mask: int) -> tuple[int, ...]:
    """Sort key ordering subsets lexicographically by their sorted members."""
    return tuple(bits(mask))


@dataclass(frozen=True)
class Verdict:
    """A truth value with an optional witness; falsy when ``ok`` is False."""

    ok: bool
    witness: object = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True, eq=False)
class Poset:
    labels: tuple[str, ...]
    leq: np.ndarray

    def __post_init__(self):
        labels = tuple(str(x) for x in self.labels)
        seen = set()
        for lab in labels:
            if lab in seen:
                raise DuplicateLabel(lab)
            seen.add(lab)
        n = len(labels)
        if n > MAX_CARRIER:
            raise CapExceeded(n, MAX_CARRIER)
        leq = np.array(self.leq, dtype=bool).reshape(n, n)
        if not leq.diagonal().all():
            bad = int(np.argmin(leq.diagonal()))
            raise InvalidOrder(f"not reflexive at {labels[bad]!r}")
        both = leq & leq.T
        np.fill_diagonal(both, False)
        if both.any():
            i, j = np.argwhere(both)[0]
            raise CycleDetected((labels[i], labels[j]))
        if n and (((leq.astype(np.int32) @ leq.astype(np.int32)) > 0) & ~leq).any():
            raise InvalidOrder("not transitive")
        leq.flags.writeable = False
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "leq", leq)

    def __eq__(self, other):
        if not isinstance(other, Poset):
            return NotImplemented
        return self.labels == other.labels and np.array_equal(self.leq, other.leq)

    def __hash__(self):
        return hash((self.labels, self.leq.tobytes()))

    def __repr__(self):
        return f"Poset({len(self.labels)} elements)"

    @property
    def n(self) -> int:
        return len(self.labels)

    @cached_property
    def _index(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    def idx(self, label) -> int:
        try:
            return self._index[str(label)]
        except KeyError:
            raise UnknownLabel(label) from None

    def mask(self, labels: Iterable) -> int:
        return mask_of(self.idx(x) for x in labels)

    def members(self, mask: int) -> set[str]:
        return {self.labels[i] for i in bits(mask)}

    @cached_property
    def up(self) -> tuple[int, ...]:
        """``up[x]`` is the bit vector of the principal upset of ``x``."""
        return tuple(mask_of(np.flatnonzero(row)) for row in self.leq)

    @cached_property
    def down(self) -> tuple[int, ...]:
        return tuple(mask_of(np.flatnonzero(col)) for col in self.leq.T)

    @cached_property
    def full(self) -> int:
        return (1 << self.n) - 1

    def covers(self) -> list[tuple[int, int]]:
        """Hasse diagram edges ``(lower, upper)``, sorted."""
        out = []
        for x in range(self.n):
            above = self.up[x] & ~(1 << x)
            for y in bits(above):
                between = above & self.down[y] & ~(1 << y)
                if not between:
                    out.append((x, y))
        return out

    def linear_extension(self) -> list[int]:
        return sorted(range(self.n), key=lambda x: (self.down[x].bit_count(), x))

    def is_upset(self, mask: int) -> bool:
        return all(self.up[x] & ~mask == 0 for x in bits(mask))


def poset_from_covers(labels: Sequence, covers: Iterable[tuple]) -> Poset:
    """Reflexive-transitive closure of a cover (or any generating) relation."""
    labels = tuple(str(x) for x in labels)
    index = {}
    for i, lab in enumerate(labels):
        if lab in index:
            raise DuplicateLabel(lab)
        index[lab] = i
    n = len(labels)
    leq = np.eye(n, dtype=bool)
    for lo, hi in covers:
        for lab in (lo, hi):
            if str(lab) not in index:
                raise UnknownLabel(lab)
        leq[index[str(lo)], index[str(hi)]] = True
    for k in range(n):
        leq |= leq[:, k : k + 1] & leq[k : k + 1, :]
    return Poset(labels, leq)


def poset_from_leq(labels: Sequence, leq) -> Poset:
    return Poset(tuple(labels), np.asarray(leq, dtype=bool))


@dataclass(frozen=True, eq=False)
class Lattice:
    poset: Poset
    meet: np.ndarray
    join: np.ndarray
    bottom: int
    top: int

    def __post_init__(self):
        for name in ("meet", "join"):
            table = np.array(getattr(self, name), dtype=np.int64)
            table.flags.writeable = False
            object.__setattr__(self, name, table)

    def __repr__(self):
        return f"Lattice({self.n} elements)"

    @property
    def n(self) -> int:
        return self.poset.n

    @property
    def labels(self) -> tuple[str, ...]:
        return self.poset.labels

    @property
    def leq(self) -> np.ndarray:
        return self.poset.leq

    def idx(self, label) -> int:
        return self.poset.idx(label)

    def join_all(self, elements: Iterable[int]) -> int:
        acc = self.bottom
        for x in elements:
            acc = int(self.join[acc, x])
        return acc

    def meet_all(self, elements: Iterable[int]) -> int:
        acc = self.top
        for x in elements:
            acc = int(self.meet[acc, x])
        return acc


def lattice_of(p: Poset) -> Lattice:
    """Meet and join tables of ``p``, or ``NotALattice`` naming the first bad pair.

    The join of ``x`` and ``y`` exists exactly when their common upper bounds
    form a principal upset; meets dually. All joins are checked before meets.
    """
    n = p.n
    if n == 0:
        raise NotALattice(("", ""), "bound")
    up, down = p.up, p.down
    by_up = {m: z for z, m in enumerate(up)}
    by_down = {m: z for z, m in enumerate(down)}
    join = np.empty((n, n), dtype=np.int64)
    meet = np.empty((n, n), dtype=np.int64)
    for x in range(n):
        for y in range(x, n):
            z = by_up.get(up[x] & up[y])
            if z is None:
                raise NotALattice((p.labels[x], p.labels[y]), "join")
            join[x, y] = join[y, x] = z
    for x in range(n):
        for y in range(x, n):
            z = by_down.get(down[x] & down[y])
            if z is None:
                raise NotALattice((p.labels[x], p.labels[y]), "meet")
            meet[x, y] = meet[y, x] = z
    bottom = next(i for i in range(n) if up[i] == p.full)
    top = next(i for i in range(n) if down[i] == p.full)
    return Lattice(p, meet, join, bottom, top)


def is_distributive(l: Lattice) -> Verdict:
    """Direct triple scan; the witness is the least ``(x, y, z)`` that fails."""
    m, j = l.meet, l.join
    lhs = m[:, j]  # x ∧ (y ∨ z)
    rhs = j[m[:, :, None], m[:, None, :]]  # (x ∧ y) ∨ (x ∧ z)
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        return Verdict(False, tuple(int(v) for v in bad[0]))
    return Verdict(True)


def join_irreducibles(l: Lattice) -> int:
    """Elements with exactly one lower cover (bottom excluded)."""
    lower_covers = [0] * l.n
    for lo, hi in l.poset.covers():
        lower_covers[hi] += 1
    return mask_of(x for x in range(l.n) if lower_covers[x] == 1)


def meet_irreducibles(l: Lattice) -> int:
    upper_covers = [0] * l.n
    for lo, hi in l.poset.covers():
        upper_covers[lo] += 1
    return mask_of(x for x in range(l.n) if upper_covers[x] == 1)


def upward_closure(p: Poset, subset: int) -> int:
    out = 0
    for x in bits(subset):
        out |= p.up[x]
    return out


@dataclass(frozen=True)
class UpsetFamily:
    base: Poset
    members: tuple[int, ...]

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, mask):
        return mask in self._index

    @cached_property
    def _index(self) -> dict[int, int]:
        return {m: i for i, m in enumerate(self.members)}

    def index(self, mask: int) -> int:
        return self._index[mask]


def all_upsets(p: Poset, cap: int = DEFAULT_UPSET_CAP) -> UpsetFamily:
    """Every upward-closed subset once, ordered by (size, bit vector).

    Backtracks from the top of a linear extension: a point may join the set
    only once everything strictly above it already has.
    """
    if p.n > cap:
        raise CapExceeded(p.n, cap)
    order = p.linear_extension()[::-1]
    strict_up = [p.up[x] & ~(1 << x) for x in range(p.n)]
    found: list[int] = []

    def walk(i: int, chosen: int) -> None:
        if i == len(order):
            found.append(chosen)
            return
        x = order[i]
        walk(i + 1, chosen)
        if strict_up[x] & ~chosen == 0:
            walk(i + 1, chosen | (1 << x))

    walk(0, 0)
    found.sort(key=lambda m: (m.bit_count(), m))
    return UpsetFamily(p, tuple(found))


def max_chain_length(p: Poset) -> int:
    if p.n == 0:
        return 0
    length = [1] * p.n
    for x in p.linear_extension():
        below = p.down[x] & ~(1 << x)
        if below:
            length[x] = 1 + max(length[y] for y in bits(below))
    return max(length)


def is_disjoint_short_chains(p: Poset) -> bool:
    """Every comparability component is a single point or a 2-element chain."""
    comparable = p.leq | p.leq.T
    return bool((comparable.sum(axis=1) <= 2).all())
