"""Pseudocomplemented Kleene algebras over finite lattices.

Unary operations are tuples of element indices. Axiom checks are exhaustive
numpy scans; every failure carries the lexicographically least violating
assignment.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    AxiomViolation,
    NotDistributive,
    NotDuallyPseudocomplemented,
    NotPseudocomplemented,
    PreconditionViolated,
    TheoremViolation,
)
from .order import Lattice, Verdict, bits, is_distributive, join_irreducibles

UnaryTable = tuple

AXIOMS = (
    "DISTRIBUTIVE",
    "DM1",
    "DM2",
    "K",
    "EQ5",
    "EQ6",
    "EQ7",
    "M",
    "D",
    "STONE",
    "DUAL_STONE",
    "DERIVED_STAR_LAWS",
    "DERIVED_PLUS_LAWS",
)

# which tables each axiom reads, beyond the lattice
_NEEDS = {
    "DISTRIBUTIVE": (),
    "DM1": ("neg",),
    "DM2": ("neg",),
    "K": ("neg",),
    "EQ5": ("neg",),
    "EQ6": ("neg", "star", "plus"),
    "EQ7": ("neg", "star", "plus"),
    "M": ("star", "plus"),
    "D": ("star", "plus"),
    "STONE": ("star",),
    "DUAL_STONE": ("plus",),
    "DERIVED_STAR_LAWS": ("star",),
    "DERIVED_PLUS_LAWS": ("plus",),
}


def pseudocomplement_table(l: Lattice) -> UnaryTable:
    """``x*`` = the greatest ``z`` with ``x ∧ z = 0``."""
    leq = l.leq
    annihilates = l.meet == l.bottom
    out = []
    for x in range(l.n):
        s = annihilates[x]
        # z ∈ s with every member of s below z
        cands = np.flatnonzero(s & (~s[:, None] | leq).all(axis=0))
        if len(cands) != 1:
            raise NotPseudocomplemented(l.labels[x])
        out.append(int(cands[0]))
    return tuple(out)


def dual_pseudocomplement_table(l: Lattice) -> UnaryTable:
    """``x⁺`` = the least ``z`` with ``x ∨ z = 1``."""
    leq = l.leq
    coannihilates = l.join == l.top
    out = []
    for x in range(l.n):
        s = coannihilates[x]
        cands = np.flatnonzero(s & (~s[:, None] | leq.T).all(axis=0))
        if len(cands) != 1:
            raise NotDuallyPseudocomplemented(l.labels[x])
        out.append(int(cands[0]))
    return tuple(out)


def plus_from_neg(neg: Sequence[int], star: Sequence[int]) -> UnaryTable:
    """``x⁺ = ∼((∼x)*)``."""
    return tuple(neg[star[neg[x]]] for x in range(len(neg)))


@dataclass(frozen=True, eq=False)
class PKAlgebra:
    lattice: Lattice
    neg: UnaryTable
    star: UnaryTable
    plus: UnaryTable

    def __post_init__(self):
        for name in ("neg", "star", "plus"):
            object.__setattr__(self, name, tuple(int(v) for v in getattr(self, name)))

    def __repr__(self):
        return f"PKAlgebra({self.n} elements)"

    @property
    def n(self) -> int:
        return self.lattice.n

    @property
    def labels(self) -> tuple[str, ...]:
        return self.lattice.labels

    def idx(self, label) -> int:
        return self.lattice.idx(label)

    def table(self, name: str) -> dict[str, str]:
        """A unary table keyed and valued by labels."""
        t = getattr(self, name)
        return {self.labels[x]: self.labels[t[x]] for x in range(self.n)}


@dataclass(frozen=True)
class AxiomVerdict:
    axiom: str
    status: str  # PASS, FAIL or SKIP
    counterexample: tuple | None = None  # ((var, element), ...)
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.status == "PASS"

    def __bool__(self):
        return self.passed

    def format(self, labels: Sequence[str], verbose: bool = False) -> str:
        line = f"AXIOM {self.axiom}: {self.status}"
        if self.status == "FAIL":
            assignment = ", ".join(f"{v}={labels[e]}" for v, e in self.counterexample)
            line += f" [counterexample: {assignment}]"
            if self.detail and verbose:
                line += f" ({self.detail})"
        elif self.status == "SKIP" and self.detail:
            line += f" [{self.detail}]"
        return line


@dataclass(frozen=True)
class AxiomReport:
    labels: tuple[str, ...]
    verdicts: dict

    def __getitem__(self, axiom: str) -> AxiomVerdict:
        return self.verdicts[axiom]

    def passed(self, *axioms: str) -> bool:
        return all(self.verdicts[a].passed for a in axioms)

    def failures(self) -> list[AxiomVerdict]:
        return [v for v in self.verdicts.values() if v.status == "FAIL"]

    @property
    def ok(self) -> bool:
        return not self.failures()

    def lines(self, verbose: bool = False) -> list[str]:
        return [v.format(self.labels, verbose) for v in self.verdicts.values()]


def _first_failure(ok: np.ndarray, names: Sequence[str]):
    bad = np.argwhere(~ok)
    if not len(bad):
        return None
    return tuple(zip(names, (int(v) for v in bad[0])))


class _Tables:
    def __init__(self, lattice, neg=None, star=None, plus=None):
        self.n = lattice.n
        self.leq = lattice.leq
        self.meet = lattice.meet
        self.join = lattice.join
        self.bottom = lattice.bottom
        self.top = lattice.top
        self.ar = np.arange(self.n)
        self.neg = None if neg is None else np.asarray(neg, dtype=np.int64)
        self.star = None if star is None else np.asarray(star, dtype=np.int64)
        self.plus = None if plus is None else np.asarray(plus, dtype=np.int64)
        self.lattice = lattice

    def check(self, axiom: str):
        """Return ``(counterexample, detail)``; counterexample is None on success."""
        return getattr(self, "_" + axiom.lower())()

    def _distributive(self):
        v = is_distributive(self.lattice)
        if v:
            return None, ""
        return tuple(zip("xyz", v.witness)), ""

    def _dm1(self):
        ng = self.neg
        return _first_failure(ng[ng] == self.ar, "x"), ""

    def _dm2(self):
        ng, leq = self.neg, self.leq
        ok = ~leq | leq[np.ix_(ng, ng)].T
        return _first_failure(ok, "xy"), ""

    def _k(self):
        ng = self.neg
        a = self.meet[self.ar, ng]
        b = self.join[self.ar, ng]
        return _first_failure(self.leq[np.ix_(a, b)], "xy"), ""

    def _eq5(self):
        ng = self.neg
        ok = (self.meet != self.bottom) | self.leq[self.ar[None, :], ng[:, None]]
        return _first_failure(ok, "xy"), ""

    def _eq6(self):
        ng, st, pl = self.neg, self.star, self.plus
        ok = (ng[st] == pl[ng]) & (ng[pl] == st[ng])
        return _first_failure(ok, "x"), ""

    def _eq7(self):
        ng, st, pl = self.neg, self.star, self.plus
        ok = self.leq[st, ng] & self.leq[ng, pl]
        return _first_failure(ok, "x"), ""

    def _m(self):
        st, pl = self.star, self.plus
        ok = (self.ar[:, None] == self.ar[None, :]) | (st[:, None] != st[None, :]) | (pl[:, None] != pl[None, :])
        return _first_failure(ok, "xy"), ""

    def _d(self):
        a = self.meet[self.ar, self.plus]
        b = self.join[self.ar, self.star]
        return _first_failure(self.leq[np.ix_(a, b)], "xy"), ""

    def _stone(self):
        st = self.star
        cex = _first_failure(self.join[st, st[st]] == self.top, "x")
        if cex is None:
            return None, ""
        x = cex[0][1]
        lab = self.lattice.labels
        a, b = st[x], st[st[x]]
        return cex, f"x*={lab[a]}, x**={lab[b]}, x*∨x**={lab[self.join[a, b]]}≠{lab[self.top]}"

    def _dual_stone(self):
        pl = self.plus
        cex = _first_failure(self.meet[pl, pl[pl]] == self.bottom, "x")
        if cex is None:
            return None, ""
        x = cex[0][1]
        lab = self.lattice.labels
        a, b = pl[x], pl[pl[x]]
        return cex, f"x⁺={lab[a]}, x⁺⁺={lab[b]}, x⁺∧x⁺⁺={lab[self.meet[a, b]]}≠{lab[self.bottom]}"

    def _laws(self, laws):
        for name, ok, names in laws:
            cex = _first_failure(ok, names)
            if cex is not None:
                return cex, name
        return None, ""

    def _derived_star_laws(self):
        s, m, j, leq = self.star, self.meet, self.join, self.leq
        ss = s[s]
        return self._laws(
            [
                ("x ≤ y implies y* ≤ x*", ~leq | leq[np.ix_(s, s)].T, "xy"),
                ("x*** = x*", s[ss] == s, "x"),
                ("(x ∨ y)* = x* ∧ y*", s[j] == m[s[:, None], s[None, :]], "xy"),
                ("(x ∧ y)** = x** ∧ y**", ss[m] == m[ss[:, None], ss[None, :]], "xy"),
                ("x ≤ x**", leq[self.ar, ss], "x"),
            ]
        )

    def _derived_plus_laws(self):
        p, m, j, leq = self.plus, self.meet, self.join, self.leq
        pp = p[p]
        return self._laws(
            [
                ("x ≤ y implies y⁺ ≤ x⁺", ~leq | leq[np.ix_(p, p)].T, "xy"),
                ("x⁺⁺⁺ = x⁺", p[pp] == p, "x"),
                ("(x ∧ y)⁺ = x⁺ ∨ y⁺", p[m] == j[p[:, None], p[None, :]], "xy"),
                ("(x ∨ y)⁺⁺ = x⁺⁺ ∨ y⁺⁺", pp[j] == j[pp[:, None], pp[None, :]], "xy"),
                ("x⁺⁺ ≤ x", leq[pp, self.ar], "x"),
            ]
        )


def axiom_report(
    algebra,
    neg: Sequence[int] | None = None,
    star: Sequence[int] | None = None,
    plus: Sequence[int] | None = None,
    axioms: Sequence[str] | None = None,
) -> AxiomReport:
    """Exhaustive verdicts for the selected axioms.

    ``algebra`` is a :class:`PKAlgebra` or a bare :class:`Lattice`. For a bare
    lattice, missing ``star`` is computed when it exists; missing ``plus`` is
    derived from ``neg`` and ``star`` when a negation is given and computed
    directly otherwise. Axioms whose tables are unavailable are skipped.
    """
    if isinstance(algebra, PKAlgebra):
        lattice = algebra.lattice
        neg, star, plus = algebra.neg, algebra.star, algebra.plus
    else:
        lattice = algebra
        if star is None:
            try:
                star = pseudocomplement_table(lattice)
            except NotPseudocomplemented:
                star = None
        if plus is None:
            if neg is not None and star is not None:
                plus = plus_from_neg(neg, star)
            else:
                try:
                    plus = dual_pseudocomplement_table(lattice)
                except NotDuallyPseudocomplemented:
                    plus = None
    tables = _Tables(lattice, neg, star, plus)
    have = {"neg": neg is not None, "star": star is not None, "plus": plus is not None}
    verdicts = {}
    for ax in axioms or AXIOMS:
        ax = ax.upper()
        if ax not in _NEEDS:
            raise KeyError(f"unknown axiom {ax!r}")
        missing = [t for t in _NEEDS[ax] if not have[t]]
        if missing:
            verdicts[ax] = AxiomVerdict(ax, "SKIP", detail="no " + "/".join(missing) + " table")
            continue
        cex, detail = tables.check(ax)
        if cex is None:
            verdicts[ax] = AxiomVerdict(ax, "PASS")
        else:
            verdicts[ax] = AxiomVerdict(ax, "FAIL", cex, detail)
    return AxiomReport(lattice.labels, verdicts)


PK_CORE = ("DISTRIBUTIVE", "DM1", "DM2", "K")


def pk_algebra(l: Lattice, neg: Sequence[int]) -> PKAlgebra:
    """Assemble a pseudocomplemented Kleene algebra and check its invariants.

    ``star`` is the lattice pseudocomplement and ``plus`` is derived from
    ``neg``; the derived ``plus`` must coincide with the lattice's own dual
    pseudocomplement.
    """
    neg = tuple(int(v) for v in neg)
    if len(neg) != l.n or any(not 0 <= v < l.n for v in neg):
        raise ValueError("negation table must be total on the carrier")
    star = pseudocomplement_table(l)
    plus = plus_from_neg(neg, star)
    report = axiom_report(l, neg=neg, star=star, plus=plus, axioms=PK_CORE + ("EQ6",))
    if not report.ok:
        raise AxiomViolation(report)
    try:
        direct = dual_pseudocomplement_table(l)
    except NotDuallyPseudocomplemented:
        direct = None
    if direct != plus:
        raise AxiomViolation(report, "dual pseudocomplement disagrees with ∼(∼x)*")
    return PKAlgebra(l, neg, star, plus)


def _antitone_involutions(l: Lattice):
    n, leq = l.n, l.leq
    up_count = [m.bit_count() for m in l.poset.up]
    down_count = [m.bit_count() for m in l.poset.down]
    neg = [-1] * n
    assigned: list[int] = []

    def fits(x: int, y: int) -> bool:
        # with ∼x = y tentatively set, check antitonicity against assigned points
        for u in assigned:
            nu = neg[u]
            if leq[u, x] and not leq[y, nu]:
                return False
            if leq[x, u] and not leq[nu, y]:
                return False
        return True

    def walk():
        try:
            x = neg.index(-1)
        except ValueError:
            yield tuple(neg)
            return
        for y in range(n):
            if neg[y] != -1 and y != x:
                continue
            if up_count[y] != down_count[x] or down_count[y] != up_count[x]:
                continue
            neg[x] = y
            neg[y] = x
            assigned.append(x)
            if y != x:
                assigned.append(y)
            if fits(x, y) and (y == x or fits(y, x)):
                yield from walk()
            assigned.pop()
            if y != x:
                assigned.pop()
            neg[x] = -1
            neg[y] = -1

    yield from walk()


def enumerate_kleene_negations(l: Lattice) -> list[UnaryTable]:
    """All Kleene negations of ``l``, sorted lexicographically as tables."""
    v = is_distributive(l)
    if not v:
        raise NotDistributive(v.witness)
    pseudocomplement_table(l)
    out = []
    for neg in _antitone_involutions(l):
        ng = np.asarray(neg)
        # equational De Morgan law ∼x ∨ ∼y = ∼(x ∧ y)
        if not (l.join[ng[:, None], ng[None, :]] == ng[l.meet]).all():
            continue
        t = _Tables(l, neg=neg)
        if t._k()[0] is None:
            out.append(tuple(neg))
    out.sort()
    return out


def rpk_from_rds(l: Lattice, star: Sequence[int], plus: Sequence[int]) -> PKAlgebra:
    """The Kleene negation ``∼x = (x ∧ x⁺) ∨ x*`` of a regular double Stone algebra."""
    star = tuple(int(v) for v in star)
    plus = tuple(int(v) for v in plus)
    report = axiom_report(l, star=star, plus=plus, axioms=("DISTRIBUTIVE", "STONE", "DUAL_STONE", "M"))
    for ax in ("DISTRIBUTIVE", "STONE", "DUAL_STONE", "M"):
        if not report[ax].passed:
            raise PreconditionViolated(ax, report[ax].format(l.labels))
    if star != pseudocomplement_table(l):
        raise PreconditionViolated("PSEUDOCOMPLEMENT", "star is not the pseudocomplement")
    if plus != dual_pseudocomplement_table(l):
        raise PreconditionViolated("PSEUDOCOMPLEMENT", "plus is not the dual pseudocomplement")
    m, j = l.meet, l.join
    neg = tuple(int(j[m[x, plus[x]], star[x]]) for x in range(l.n))
    alt = tuple(int(m[j[x, star[x]], plus[x]]) for x in range(l.n))
    if neg != alt:
        raise TheoremViolation("(x ∧ x⁺) ∨ x* differs from (x ∨ x*) ∧ x⁺")
    a = pk_algebra(l, neg)
    if a.plus != plus:
        raise TheoremViolation("round trip does not restore the dual pseudocomplement")
    return a


def rds_from_rpk(a: PKAlgebra) -> tuple[Lattice, UnaryTable, UnaryTable]:
    """The double Stone reduct ``(L, *, ⁺)`` with ``x⁺ = ∼((∼x)*)``."""
    report = axiom_report(a, axioms=("STONE",))
    if not report["STONE"].passed:
        raise PreconditionViolated("STONE", report["STONE"].format(a.labels))
    return a.lattice, a.star, plus_from_neg(a.neg, a.star)


def is_homomorphism(f: Sequence[int], src: PKAlgebra, dst: PKAlgebra, injective: bool = False) -> Verdict:
    """Check that ``f`` preserves 0, 1, ∨, ∧, ∼ and *; witness names the first failure."""
    f = np.asarray(f, dtype=np.int64)
    if len(f) != src.n:
        raise ValueError("map must be total on the source carrier")
    ls, ld = src.lattice, dst.lattice
    if f[ls.bottom] != ld.bottom:
        return Verdict(False, ("bottom", ls.bottom))
    if f[ls.top] != ld.top:
        return Verdict(False, ("top", ls.top))
    for name, s_tab, d_tab in (("join", ls.join, ld.join), ("meet", ls.meet, ld.meet)):
        ok = f[s_tab] == d_tab[f[:, None], f[None, :]]
        bad = np.argwhere(~ok)
        if len(bad):
            return Verdict(False, (name, int(bad[0][0]), int(bad[0][1])))
    for name in ("neg", "star"):
        s_tab = np.asarray(getattr(src, name))
        d_tab = np.asarray(getattr(dst, name))
        bad = np.flatnonzero(f[s_tab] != d_tab[f])
        if len(bad):
            return Verdict(False, (name, int(bad[0])))
    if injective:
        seen = {}
        for x, y in enumerate(f.tolist()):
            if y in seen:
                return Verdict(False, ("injective", seen[y], x))
            seen[y] = x
    return Verdict(True)


def subalgebra_generated(a: PKAlgebra, seed: int) -> int:
    """Least subset containing ``seed``, 0 and 1 closed under ∨, ∧, ∼, *."""
    l = a.lattice
    have = seed | (1 << l.bottom) | (1 << l.top)
    frontier = list(bits(have))
    elems = list(frontier)
    while frontier:
        new = []
        for x in frontier:
            cands = [a.neg[x], a.star[x]]
            for y in elems:
                cands.append(int(l.join[x, y]))
                cands.append(int(l.meet[x, y]))
            for z in cands:
                if not have >> z & 1:
                    have |= 1 << z
                    new.append(z)
                    elems.append(z)
        frontier = new
    return have


def _signature(a: PKAlgebra, x: int) -> tuple:
    """Shape of the subalgebra generated by ``x``, recorded in discovery order.

    Equal signatures mean the generated subalgebras are isomorphic via a map
    sending one generator to the other, which any embedding must respect.
    """
    l = a.lattice
    order = [x]
    pos = {x: 0}
    trace = []

    def see(v):
        v = int(v)
        if v not in pos:
            pos[v] = len(order)
            order.append(v)
        trace.append(pos[v])

    see(l.bottom)
    see(l.top)
    i = 0
    while i < len(order):
        e = order[i]
        see(a.neg[e])
        see(a.star[e])
        for k in range(i + 1):
            see(l.join[e, order[k]])
            see(l.meet[e, order[k]])
        i += 1
    return tuple(trace)


def signatures(a: PKAlgebra) -> list[tuple]:
    return [_signature(a, x) for x in range(a.n)]


def find_embedding(src: PKAlgebra, dst: PKAlgebra, bijective: bool = False, dst_signatures=None):
    """First injective homomorphism ``src → dst`` in candidate order, or None.

    Branches only on images of join-irreducibles; every other image is the
    join of the images of the join-irreducibles below it.
    """
    if bijective and src.n != dst.n:
        return None
    if src.n > dst.n:
        return None
    ls, ld = src.lattice, dst.lattice
    jis = sorted(bits(join_irreducibles(ls)), key=lambda x: (ls.poset.down[x].bit_count(), x))
    dsig = dst_signatures if dst_signatures is not None else signatures(dst)
    allowed = join_irreducibles(ld) if bijective else (1 << ld.n) - 1
    cands = []
    for j in jis:
        sj = _signature(src, j)
        cands.append([y for y in bits(allowed) if dsig[y] == sj])
        if not cands[-1]:
            return None
    below = [[j for j in jis if ls.leq[j, x]] for x in range(ls.n)]
    image: dict[int, int] = {}

    def extend():
        f = [ld.join_all(image[j] for j in below[x]) for x in range(ls.n)]
        return f if is_homomorphism(f, src, dst, injective=True) else None

    def walk(i: int):
        if i == len(jis):
            return extend()
        j = jis[i]
        for y in cands[i]:
            ok = True
            for k in jis[:i]:
                # injective lattice maps preserve and reflect order
                if bool(ls.leq[k, j]) != bool(ld.leq[image[k], y]) or bool(ls.leq[j, k]) != bool(ld.leq[y, image[k]]):
                    ok = False
                    break
            if not ok:
                continue
            image[j] = y
            found = walk(i + 1)
            if found is not None:
                return found
            del image[j]
        return None

    return walk(0)


def are_isomorphic(a: PKAlgebra, b: PKAlgebra):
    """An isomorphism ``a → b`` as a tuple of images, or None."""
    f = find_embedding(a, b, bijective=True)
    return None if f is None else tuple(f)


def neg_from_labels(l: Lattice, mapping: dict) -> UnaryTable:
    """Complete a partial negation given by labels using involutivity."""
    neg = [-1] * l.n
    for k, v in mapping.items():
        x, y = l.idx(k), l.idx(v)
        neg[x] = y
        neg[y] = x
    if -1 in neg:
        raise ValueError(f"negation undefined at {l.labels[neg.index(-1)]!r}")
    return tuple(neg)


__all__ = [
    "AXIOMS",
    "AxiomReport",
    "AxiomVerdict",
    "PKAlgebra",
    "are_isomorphic",
    "axiom_report",
    "dual_pseudocomplement_table",
    "enumerate_kleene_negations",
    "find_embedding",
    "is_homomorphism",
    "neg_from_labels",
    "pk_algebra",
    "plus_from_neg",
    "pseudocomplement_table",
    "rds_from_rpk",
    "rpk_from_rds",
    "subalgebra_generated",
]
