"""Relations, coverings, approximation operators and rough set algebras."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, combinations_with_replacement, permutations
from typing import Iterable, Iterator, Sequence

import numpy as np

from .algebra import (
    PKAlgebra,
    UnaryTable,
    axiom_report,
    dual_pseudocomplement_table,
    pseudocomplement_table,
)
from .errors import (
    AxiomViolation,
    CapExceeded,
    ClosureViolation,
    NotACovering,
    NotALattice,
    NotAnEquivalence,
    NotAQuasiorder,
    NotIrredundant,
    TheoremViolation,
    UnknownLabel,
)
from .order import Lattice, Poset, Verdict, bits, lattice_of, lex_key, mask_of

DEFAULT_SUBSET_CAP = 20
DEFAULT_FAMILY_CAP = 12


@dataclass(frozen=True, eq=False)
class FiniteRelation:
    universe: tuple[str, ...]
    pairs: np.ndarray

    def __post_init__(self):
        universe = tuple(str(u) for u in self.universe)
        n = len(universe)
        pairs = np.array(self.pairs, dtype=bool).reshape(n, n)
        pairs.flags.writeable = False
        object.__setattr__(self, "universe", universe)
        object.__setattr__(self, "pairs", pairs)

    @classmethod
    def from_pairs(cls, universe: Sequence, pairs: Iterable[tuple]) -> FiniteRelation:
        universe = tuple(str(u) for u in universe)
        index = {u: i for i, u in enumerate(universe)}
        table = np.zeros((len(universe), len(universe)), dtype=bool)
        for x, y in pairs:
            for u in (x, y):
                if str(u) not in index:
                    raise UnknownLabel(u)
            table[index[str(x)], index[str(y)]] = True
        return cls(universe, table)

    def __eq__(self, other):
        if not isinstance(other, FiniteRelation):
            return NotImplemented
        return self.universe == other.universe and np.array_equal(self.pairs, other.pairs)

    def __hash__(self):
        return hash((self.universe, self.pairs.tobytes()))

    def __repr__(self):
        return f"FiniteRelation({len(self.universe)} points, {int(self.pairs.sum())} pairs)"

    @property
    def n(self) -> int:
        return len(self.universe)

    @cached_property
    def successors(self) -> tuple[int, ...]:
        """``successors[x]`` is the neighbourhood R(x) = {y : x R y}."""
        return tuple(mask_of(np.flatnonzero(row)) for row in self.pairs)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def mask(self, points: Iterable) -> int:
        index = {u: i for i, u in enumerate(self.universe)}
        try:
            return mask_of(index[str(p)] for p in points)
        except KeyError as exc:
            raise UnknownLabel(exc.args[0]) from None

    def members(self, mask: int) -> list[str]:
        return [self.universe[i] for i in bits(mask)]

    def reflexive_closure(self) -> FiniteRelation:
        return FiniteRelation(self.universe, self.pairs | np.eye(self.n, dtype=bool))

    def symmetric_closure(self) -> FiniteRelation:
        return FiniteRelation(self.universe, self.pairs | self.pairs.T)

    def transitive_closure(self) -> FiniteRelation:
        t = self.pairs.copy()
        for k in range(self.n):
            t |= t[:, k : k + 1] & t[k : k + 1, :]
        return FiniteRelation(self.universe, t)


@dataclass(frozen=True)
class RelationKind:
    reflexive: bool
    symmetric: bool
    transitive: bool

    @property
    def kind(self) -> str:
        if self.reflexive and self.symmetric and self.transitive:
            return "equivalence"
        if self.reflexive and self.transitive:
            return "quasiorder"
        if self.reflexive and self.symmetric:
            return "tolerance"
        return "other"

    @property
    def is_equivalence(self) -> bool:
        return self.kind == "equivalence"

    @property
    def is_quasiorder(self) -> bool:
        return self.reflexive and self.transitive

    @property
    def is_tolerance(self) -> bool:
        return self.reflexive and self.symmetric


def classify_relation(r: FiniteRelation) -> RelationKind:
    p = r.pairs
    closed = (p.astype(np.int32) @ p.astype(np.int32)) > 0
    return RelationKind(
        reflexive=bool(p.diagonal().all()),
        symmetric=bool((p == p.T).all()),
        transitive=bool(not (closed & ~p).any()),
    )


def lower_approx(r: FiniteRelation, subset: int) -> int:
    """Points whose whole neighbourhood lies inside ``subset``."""
    return mask_of(x for x, nb in enumerate(r.successors) if nb & ~subset == 0)


def upper_approx(r: FiniteRelation, subset: int) -> int:
    """Points whose neighbourhood meets ``subset``."""
    return mask_of(x for x, nb in enumerate(r.successors) if nb & subset)


def rough_equal(r: FiniteRelation, x: int, y: int) -> bool:
    return lower_approx(r, x) == lower_approx(r, y) and upper_approx(r, x) == upper_approx(r, y)


@dataclass(frozen=True)
class Covering:
    """A family of point sets; validity is checked by the operations that need it."""

    universe: tuple[str, ...]
    blocks: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "universe", tuple(str(u) for u in self.universe))
        canon = sorted(set(int(b) for b in self.blocks), key=lex_key)
        object.__setattr__(self, "blocks", tuple(canon))

    @classmethod
    def from_blocks(cls, universe: Sequence, blocks: Iterable[Iterable]) -> Covering:
        universe = tuple(str(u) for u in universe)
        index = {u: i for i, u in enumerate(universe)}
        masks = []
        for block in blocks:
            try:
                masks.append(mask_of(index[str(p)] for p in block))
            except KeyError as exc:
                raise UnknownLabel(exc.args[0]) from None
        return cls(universe, tuple(masks))

    @property
    def n(self) -> int:
        return len(self.universe)

    def check(self) -> None:
        if any(b == 0 for b in self.blocks):
            raise NotACovering("covering contains an empty block")
        union = 0
        for b in self.blocks:
            union |= b
        if union != (1 << self.n) - 1:
            missing = [self.universe[i] for i in bits(((1 << self.n) - 1) & ~union)]
            raise NotACovering(f"points not covered: {missing}")

    def block_labels(self) -> list[list[str]]:
        return [[self.universe[i] for i in bits(b)] for b in self.blocks]


def induced_tolerance(c: Covering) -> FiniteRelation:
    c.check()
    table = np.zeros((c.n, c.n), dtype=bool)
    for b in c.blocks:
        idx = list(bits(b))
        table[np.ix_(idx, idx)] = True
    return FiniteRelation(c.universe, table)


def removable_blocks(c: Covering) -> list[int]:
    """Blocks whose removal still leaves a covering, in canonical order."""
    c.check()
    out = []
    for i, b in enumerate(c.blocks):
        rest = 0
        for k, other in enumerate(c.blocks):
            if k != i:
                rest |= other
        if b & ~rest == 0:
            out.append(b)
    return out


def is_irredundant(c: Covering) -> Verdict:
    """Irredundant iff every block has a point no other block covers.
    The witness of a failure is the first removable block."""
    removable = removable_blocks(c)
    return Verdict(False, removable[0]) if removable else Verdict(True)


@dataclass(frozen=True)
class RoughPair:
    lower: int
    upper: int
    witness: int


def subset_label(universe: Sequence[str], mask: int) -> str:
    return "{" + ",".join(universe[i] for i in bits(mask)) + "}"


@dataclass(frozen=True, eq=False)
class RSSystem:
    relation: FiniteRelation
    pairs: tuple[RoughPair, ...]
    poset: Poset
    is_lattice: bool

    def __len__(self):
        return len(self.pairs)

    @cached_property
    def index(self) -> dict[tuple[int, int], int]:
        return {(p.lower, p.upper): i for i, p in enumerate(self.pairs)}

    @property
    def labels(self) -> tuple[str, ...]:
        return self.poset.labels

    def lookup(self, lower: int, upper: int, operation: str = "lookup", witness=None) -> int:
        try:
            return self.index[(lower, upper)]
        except KeyError:
            raise ClosureViolation(operation, witness if witness is not None else (lower, upper)) from None

    def describe(self, i: int) -> str:
        u = self.relation.universe
        p = self.pairs[i]
        return f"({subset_label(u, p.lower)}, {subset_label(u, p.upper)})"


def rs_system(r: FiniteRelation, cap: int = DEFAULT_SUBSET_CAP) -> RSSystem:
    """All pairs (X▼, X▲), each named by its lexicographically least subset.

    Pairs are ordered by total size and then by witness, which is a linear
    extension of the componentwise order.
    """
    if r.n > cap:
        raise CapExceeded(r.n, cap)
    succ = r.successors
    best: dict[tuple[int, int], int] = {}
    n = r.n
    for subset in range(1 << n):
        lo = 0
        up = 0
        for x in range(n):
            nb = succ[x]
            if nb & ~subset == 0:
                lo |= 1 << x
            if nb & subset:
                up |= 1 << x
        key = (lo, up)
        prev = best.get(key)
        if prev is None or lex_key(subset) < lex_key(prev):
            best[key] = subset
    pairs = sorted(
        (RoughPair(lo, up, w) for (lo, up), w in best.items()),
        key=lambda p: (p.lower.bit_count() + p.upper.bit_count(), lex_key(p.witness)),
    )
    m = len(pairs)
    lows = np.array([[(p.lower >> i) & 1 for i in range(n)] for p in pairs], dtype=bool).reshape(m, n)
    ups = np.array([[(p.upper >> i) & 1 for i in range(n)] for p in pairs], dtype=bool).reshape(m, n)
    # componentwise inclusion
    leq = (~lows[:, None, :] | lows[None, :, :]).all(axis=2) & (~ups[:, None, :] | ups[None, :, :]).all(axis=2)
    labels = tuple("w" + subset_label(r.universe, p.witness) for p in pairs)
    poset = Poset(labels, leq)
    try:
        lattice_of(poset)
        is_lattice = True
    except NotALattice:
        is_lattice = False
    return RSSystem(r, tuple(pairs), poset, is_lattice)


@dataclass(frozen=True, eq=False)
class RoughSetAlgebra:
    """Operation tables over an :class:`RSSystem`, built from set formulas."""

    kind: str
    system: RSSystem
    lattice: Lattice
    neg: UnaryTable
    star: UnaryTable | None = None
    plus: UnaryTable | None = None
    imp: np.ndarray | None = None

    @property
    def n(self) -> int:
        return self.lattice.n

    def pk(self) -> PKAlgebra:
        if self.star is None:
            raise ValueError(f"{self.kind} rough set algebra has no pseudocomplement table")
        plus = self.plus
        if plus is None:
            plus = tuple(self.neg[self.star[self.neg[x]]] for x in range(self.n))
        return PKAlgebra(self.lattice, self.neg, self.star, plus)


def _binary_table(s: RSSystem, name: str, fn) -> np.ndarray:
    m = len(s)
    out = np.empty((m, m), dtype=np.int64)
    for i, p in enumerate(s.pairs):
        for j, q in enumerate(s.pairs):
            lo, up = fn(p, q)
            out[i, j] = s.lookup(lo, up, name, (s.labels[i], s.labels[j]))
    return out


def _unary_table(s: RSSystem, name: str, fn) -> tuple:
    out = []
    for i, p in enumerate(s.pairs):
        lo, up = fn(p)
        out.append(s.lookup(lo, up, name, s.labels[i]))
    return tuple(out)


def _componentwise_lattice(s: RSSystem) -> Lattice:
    meet = _binary_table(s, "meet", lambda p, q: (p.lower & q.lower, p.upper & q.upper))
    join = _binary_table(s, "join", lambda p, q: (p.lower | q.lower, p.upper | q.upper))
    return _lattice_from_tables(s, meet, join)


def _lattice_from_tables(s: RSSystem, meet, join) -> Lattice:
    full = s.relation.full
    bottom = s.lookup(0, 0, "bottom")
    top = s.lookup(full, full, "top")
    return Lattice(s.poset, meet, join, bottom, top)


def _negation(s: RSSystem) -> tuple:
    """∼(X▼, X▲) = (Xᶜ▼, Xᶜ▲); cross-checked against (X▲ᶜ, X▼ᶜ)."""
    r, full = s.relation, s.relation.full
    neg = _unary_table(
        s, "neg", lambda p: (lower_approx(r, full & ~p.witness), upper_approx(r, full & ~p.witness))
    )
    other = _unary_table(s, "neg", lambda p: (full & ~p.upper, full & ~p.lower))
    if neg != other:
        raise TheoremViolation("∼ depends on the representative subset")
    return neg


def _require(report, axioms, what):
    failed = [a for a in axioms if not report[a].passed]
    if failed:
        raise AxiomViolation(report, f"{what}: {', '.join(failed)} failed")


def rs_algebra_equivalence(e: FiniteRelation, system: RSSystem | None = None) -> RoughSetAlgebra:
    """Componentwise lattice with (X▼, X▲)* = (Xᶜ▼, Xᶜ▼) and (X▼, X▲)⁺ = (Xᶜ▲, Xᶜ▲)."""
    if not classify_relation(e).is_equivalence:
        raise NotAnEquivalence("relation is not an equivalence")
    s = system or rs_system(e)
    full = e.full
    lattice = _componentwise_lattice(s)

    def star(p):
        lo = lower_approx(e, full & ~p.witness)
        return lo, lo

    def plus(p):
        up = upper_approx(e, full & ~p.witness)
        return up, up

    star_t = _unary_table(s, "star", star)
    plus_t = _unary_table(s, "plus", plus)
    neg = _negation(s)
    if star_t != pseudocomplement_table(lattice) or plus_t != dual_pseudocomplement_table(lattice):
        raise TheoremViolation("formula pseudocomplements differ from the lattice ones")
    report = axiom_report(lattice, neg=neg, star=star_t, plus=plus_t)
    _require(report, ("DISTRIBUTIVE", "STONE", "DUAL_STONE", "M", "DM1", "DM2", "K", "EQ6"), "equivalence RS")
    return RoughSetAlgebra("equivalence", s, lattice, neg, star_t, plus_t)


def rs_algebra_quasiorder(q: FiniteRelation, system: RSSystem | None = None) -> RoughSetAlgebra:
    """Componentwise lattice, ∼, and the implication
    (X▼, X▲) → (Y▼, Y▲) = ((X▼ᶜ ∪ Y▼)▼, X▼ᶜ ∪ Y▲)."""
    if not classify_relation(q).is_quasiorder:
        raise NotAQuasiorder("relation is not a quasiorder")
    s = system or rs_system(q)
    full = q.full
    lattice = _componentwise_lattice(s)
    neg = _negation(s)

    def imp(p, r):
        outside = full & ~p.lower
        return lower_approx(q, outside | r.lower), outside | r.upper

    imp_t = _binary_table(s, "imp", imp)
    return RoughSetAlgebra("quasiorder", s, lattice, neg, imp=imp_t)


def rs_algebra_tolerance(c: Covering, system: RSSystem | None = None, check: bool = True) -> RoughSetAlgebra:
    """Rough set pK-algebra of the tolerance induced by an irredundant covering.

    join = ((X▼ ∪ Y▼)▲▼, X▲ ∪ Y▲), meet = (X▼ ∩ Y▼, (X▲ ∩ Y▲)▼▲),
    (X▼, X▲)* = (Xᶜ▼▼, Xᶜ▼▲).
    """
    verdict = is_irredundant(c)
    if not verdict:
        raise NotIrredundant(subset_label(c.universe, verdict.witness))
    r = induced_tolerance(c)
    s = system or rs_system(r)
    full = r.full
    join = _binary_table(
        s, "join", lambda p, q: (lower_approx(r, upper_approx(r, p.lower | q.lower)), p.upper | q.upper)
    )
    meet = _binary_table(
        s, "meet", lambda p, q: (p.lower & q.lower, upper_approx(r, lower_approx(r, p.upper & q.upper)))
    )
    lattice = _lattice_from_tables(s, meet, join)

    def star(p):
        inner = lower_approx(r, full & ~p.witness)
        return lower_approx(r, inner), upper_approx(r, inner)

    star_t = _unary_table(s, "star", star)
    neg = _negation(s)
    alg = RoughSetAlgebra("tolerance", s, lattice, neg, star_t)
    if check:
        if not verify_lattice_formulas(s, "tolerance", family_cap=0, lattice=lattice):
            raise TheoremViolation("tolerance meet/join formulas disagree with the order")
        if star_t != pseudocomplement_table(lattice):
            raise TheoremViolation("formula pseudocomplement differs from the lattice one")
        pk = alg.pk()
        report = axiom_report(pk, axioms=("DISTRIBUTIVE", "DM1", "DM2", "K", "M", "D", "EQ6"))
        _require(report, ("DISTRIBUTIVE", "DM1", "DM2", "K", "M", "D", "EQ6"), "tolerance RS")
        if pk.plus != dual_pseudocomplement_table(lattice):
            raise TheoremViolation("∼(∼x)* is not the dual pseudocomplement")
    return alg


@dataclass(frozen=True)
class FormulaReport:
    ok: bool
    pairs_checked: int
    families_checked: int
    witness: tuple | None = None

    def __bool__(self):
        return self.ok


def _family_bounds_formula(s: RSSystem, kind: str, family: Sequence[int]):
    r, full = s.relation, s.relation.full
    lo_meet, up_meet = full, full
    lo_join, up_join = 0, 0
    for i in family:
        p = s.pairs[i]
        lo_meet &= p.lower
        up_meet &= p.upper
        lo_join |= p.lower
        up_join |= p.upper
    if kind == "tolerance":
        up_meet = upper_approx(r, lower_approx(r, up_meet))
        lo_join = lower_approx(r, upper_approx(r, lo_join))
    return (lo_meet, up_meet), (lo_join, up_join)


def _order_bounds(s: RSSystem, family: Sequence[int]):
    """Infimum and supremum in (RS, ≤) by bound scanning; None when absent."""
    p = s.poset
    lower_bounds = p.full
    upper_bounds = p.full
    for i in family:
        lower_bounds &= p.down[i]
        upper_bounds &= p.up[i]
    inf = next((z for z in bits(lower_bounds) if p.down[z] == lower_bounds), None)
    sup = next((z for z in bits(upper_bounds) if p.up[z] == upper_bounds), None)
    return inf, sup


def verify_lattice_formulas(
    s: RSSystem, kind: str, family_cap: int = DEFAULT_FAMILY_CAP, lattice: Lattice | None = None
) -> FormulaReport:
    """Compare formula meets/joins against order-theoretic bounds.

    ``kind`` is ``"equivalence"``/``"quasiorder"`` (componentwise formulas) or
    ``"tolerance"``. Every pair is checked; when the system has at most
    ``family_cap`` elements every subfamily (including the empty one) is too.
    """
    if kind not in ("equivalence", "quasiorder", "tolerance"):
        raise ValueError(f"unknown kind {kind!r}")
    pairs_checked = 0
    families_checked = 0

    def check(family):
        (ml, mu), (jl, ju) = _family_bounds_formula(s, kind, family)
        inf, sup = _order_bounds(s, family)
        got_meet = s.index.get((ml, mu))
        got_join = s.index.get((jl, ju))
        if inf is None or got_meet != inf:
            return ("meet", tuple(s.labels[i] for i in family))
        if sup is None or got_join != sup:
            return ("join", tuple(s.labels[i] for i in family))
        if lattice is not None and len(family) == 2:
            a, b = family
            if lattice.meet[a, b] != inf or lattice.join[a, b] != sup:
                return ("table", (s.labels[a], s.labels[b]))
        return None

    m = len(s)
    for a, b in combinations(range(m), 2):
        pairs_checked += 1
        bad = check((a, b))
        if bad:
            return FormulaReport(False, pairs_checked, families_checked, bad)
    if m <= family_cap:
        for size in range(m + 1):
            if size == 2:
                continue
            for fam in combinations(range(m), size):
                families_checked += 1
                bad = check(fam)
                if bad:
                    return FormulaReport(False, pairs_checked, families_checked, bad)
    return FormulaReport(True, pairs_checked, families_checked)


# -- enumeration of relations ----------------------------------------------


def _points(n: int) -> tuple[str, ...]:
    return tuple(str(i + 1) for i in range(n))


def set_partitions(n: int) -> Iterator[list[int]]:
    """All set partitions of ``range(n)`` as lists of block masks (restricted growth)."""

    def walk(i, blocks):
        if i == n:
            yield list(blocks)
            return
        for k in range(len(blocks)):
            blocks[k] |= 1 << i
            yield from walk(i + 1, blocks)
            blocks[k] &= ~(1 << i)
        blocks.append(1 << i)
        yield from walk(i + 1, blocks)
        blocks.pop()

    if n == 0:
        yield []
        return
    yield from walk(0, [])


def equivalence_from_blocks(universe: Sequence, blocks: Sequence[int]) -> FiniteRelation:
    n = len(universe)
    table = np.zeros((n, n), dtype=bool)
    for b in blocks:
        idx = list(bits(b))
        table[np.ix_(idx, idx)] = True
    return FiniteRelation(tuple(universe), table)


def equivalences_up_to_iso(n: int) -> list[tuple[FiniteRelation, list[int]]]:
    """One equivalence per integer partition of ``n``, larger blocks first,
    blocks on consecutive points."""

    def parts(rest, largest):
        if rest == 0:
            yield []
            return
        for k in range(min(rest, largest), 0, -1):
            for tail in parts(rest - k, k):
                yield [k] + tail

    out = []
    for sizes in parts(n, n):
        blocks, start = [], 0
        for k in sizes:
            blocks.append(((1 << k) - 1) << start)
            start += k
        out.append((equivalence_from_blocks(_points(n), blocks), blocks))
    return out


def _relabel(mask: int, perm: Sequence[int]) -> int:
    return mask_of(perm[i] for i in bits(mask))


def covering_canonical_form(n: int, blocks: Sequence[int]) -> tuple[int, ...]:
    """Least sorted block tuple over all point permutations."""
    best = None
    for perm in permutations(range(n)):
        form = tuple(sorted(_relabel(b, perm) for b in blocks))
        if best is None or form < best:
            best = form
    return best


def _presentation(n: int, form: Sequence[int]) -> tuple[int, ...]:
    """Renumber points by the blocks that contain them, so that e.g. the
    2-block path reads {1,2} {2,3}."""
    blocks = sorted(form, key=lex_key)
    member = [tuple(k for k, b in enumerate(blocks) if b >> x & 1) for x in range(n)]
    order = sorted(range(n), key=lambda x: (member[x], x))
    perm = [0] * n
    for new, old in enumerate(order):
        perm[old] = new
    return tuple(_relabel(b, perm) for b in blocks)


def irredundant_coverings(n: int) -> list[Covering]:
    """Irredundant coverings of an ``n``-point universe, one per isomorphism class.

    Each of ``k`` blocks owns a private point; the remaining points pick any
    nonempty set of blocks. Ordered by block count, then canonical form.
    """
    found: dict[tuple, tuple] = {}
    for k in range(1, n + 1):
        subsets = range(1, 1 << k)
        for choice in combinations_with_replacement(subsets, n - k):
            blocks = [1 << i for i in range(k)]
            for offset, bs in enumerate(choice):
                for b in bits(bs):
                    blocks[b] |= 1 << (k + offset)
            form = covering_canonical_form(n, blocks)
            found.setdefault(form, (k, form))
    ordered = sorted(found.values())
    return [Covering(_points(n), _presentation(n, form)) for _, form in ordered]


def tolerances(n: int) -> Iterator[FiniteRelation]:
    """Every tolerance on ``n`` points (labelled, not up to isomorphism)."""
    edges = list(combinations(range(n), 2))
    for chosen in range(1 << len(edges)):
        table = np.eye(n, dtype=bool)
        for e in bits(chosen):
            x, y = edges[e]
            table[x, y] = table[y, x] = True
        yield FiniteRelation(_points(n), table)


def find_non_lattice_tolerance(max_points: int = 6) -> FiniteRelation | None:
    """First tolerance (by size, then edge set) whose rough set order is not a lattice."""
    for n in range(1, max_points + 1):
        for r in tolerances(n):
            if not rs_system(r).is_lattice:
                return r
    return None
