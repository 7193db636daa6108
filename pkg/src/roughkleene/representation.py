"""Prime filters, the canonical embedding, and representation witness searches."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .algebra import (
    PKAlgebra,
    axiom_report,
    find_embedding,
    is_homomorphism,
    rpk_from_rds,
    signatures,
)
from .errors import (
    NotAPrimeFilter,
    NotDistributive,
    NotRegular,
    NoWitnessWithinBudget,
    PreconditionViolated,
    TheoremViolation,
)
from .kvspace import KVSpace, UpsetAlgebra, is_disjoint_short_chains, upset_algebra, validate_kv
from .order import (
    Lattice,
    all_upsets,
    bits,
    is_distributive,
    join_irreducibles,
    mask_of,
    max_chain_length,
    poset_from_leq,
)
from .roughsets import (
    Covering,
    FiniteRelation,
    RoughSetAlgebra,
    equivalences_up_to_iso,
    irredundant_coverings,
    rs_algebra_equivalence,
    rs_algebra_tolerance,
    subset_label,
)

BRUTE_FORCE_CAP = 12


@dataclass(frozen=True)
class PrimeFilter:
    members: int
    generator: int  # least element; the filter is ↑generator

    def label(self, labels: Sequence[str]) -> str:
        return "↑" + labels[self.generator]

    def __contains__(self, x: int) -> bool:
        return bool(self.members >> x & 1)


def _require_distributive(l: Lattice) -> None:
    verdict = is_distributive(l)
    if not verdict:
        raise NotDistributive(tuple(l.labels[i] for i in verdict.witness))


def _sort(filters: list[PrimeFilter]) -> list[PrimeFilter]:
    return sorted(filters, key=lambda f: (f.members.bit_count(), f.generator))


def prime_filters(l: Lattice) -> list[PrimeFilter]:
    """``↑j`` for each join-irreducible ``j``, smaller filters first."""
    _require_distributive(l)
    return _sort([PrimeFilter(l.poset.up[j], j) for j in bits(join_irreducibles(l))])


def is_prime_filter(l: Lattice, subset: int) -> bool:
    full = l.poset.full
    if subset == 0 or subset == full or not l.poset.is_upset(subset):
        return False
    members = list(bits(subset))
    for x in members:
        for y in members:
            if not subset >> int(l.meet[x, y]) & 1:
                return False
    for x in range(l.n):
        for y in range(x, l.n):
            if subset >> int(l.join[x, y]) & 1 and not (subset >> x & 1 or subset >> y & 1):
                return False
    return True


def prime_filters_bruteforce(l: Lattice) -> list[PrimeFilter]:
    """Scan every upset for the filter and primality conditions."""
    found = [u for u in all_upsets(l.poset, cap=BRUTE_FORCE_CAP) if is_prime_filter(l, u)]
    return _sort([PrimeFilter(u, l.meet_all(bits(u))) for u in found])


def g_of_prime_filter(a: PKAlgebra, p: PrimeFilter) -> PrimeFilter:
    """g(P) = {x : ∼x ∉ P}."""
    l = a.lattice
    if not is_prime_filter(l, p.members):
        raise NotAPrimeFilter(f"{sorted(l.poset.members(p.members))} is not a prime filter")
    image = mask_of(x for x in range(a.n) if not p.members >> a.neg[x] & 1)
    if not is_prime_filter(l, image):
        raise TheoremViolation(f"g({p.label(l.labels)}) is not a prime filter")
    return PrimeFilter(image, l.meet_all(bits(image)))


def _require_regular(a: PKAlgebra) -> None:
    verdict = axiom_report(a, axioms=("M",))["M"]
    if not verdict.passed:
        raise NotRegular(tuple(a.labels[e] for _, e in verdict.counterexample))


@dataclass(frozen=True, eq=False)
class FilterSpace:
    algebra: PKAlgebra
    filters: tuple[PrimeFilter, ...]
    space: KVSpace


def filter_space(a: PKAlgebra) -> FilterSpace:
    """(F_p, ⊆, g) together with the filters it is built from."""
    _require_regular(a)
    filters = prime_filters(a.lattice)
    position = {f.members: i for i, f in enumerate(filters)}
    m = len(filters)
    leq = np.array([[f.members & ~h.members == 0 for h in filters] for f in filters], dtype=bool).reshape(m, m)
    labels = [f.label(a.labels) for f in filters]
    g = []
    for f in filters:
        image = g_of_prime_filter(a, f)
        if image.members not in position:
            raise TheoremViolation(f"g({f.label(a.labels)}) is not principal at a join-irreducible")
        g.append(position[image.members])
    poset = poset_from_leq(labels, leq)
    report = validate_kv(poset, g)
    if not report.ok:
        raise TheoremViolation("prime filter space violates: " + "; ".join(report.lines()))
    return FilterSpace(a, tuple(filters), KVSpace(poset, tuple(g)))


def kv_space_of_algebra(a: PKAlgebra) -> KVSpace:
    return filter_space(a).space


@dataclass(frozen=True, eq=False)
class CanonicalEmbedding:
    source: PKAlgebra
    filters: FilterSpace
    target: UpsetAlgebra
    images: tuple[int, ...]  # h(x) as a bit vector over filters
    mapping: tuple[int, ...]  # h(x) as an element of the upset algebra

    def describe(self, x: int) -> str:
        labels = self.filters.space.labels
        return "{" + ", ".join(labels[i] for i in bits(self.images[x])) + "}"


def canonical_embedding_h(a: PKAlgebra) -> CanonicalEmbedding:
    """h(x) = {P : x ∈ P}; checked to be an injective homomorphism."""
    fs = filter_space(a)
    target = upset_algebra(fs.space)
    images = tuple(mask_of(i for i, f in enumerate(fs.filters) if x in f) for x in range(a.n))
    mapping = []
    for x, img in enumerate(images):
        if img not in target.family:
            raise TheoremViolation(f"h({a.labels[x]}) is not an upset")
        mapping.append(target.element(img))
    verdict = is_homomorphism(mapping, a, target.algebra, injective=True)
    if not verdict:
        raise TheoremViolation(f"h is not an embedding: {verdict.witness}")
    return CanonicalEmbedding(a, fs, target, images, tuple(mapping))


def check_prime_chain_regularity(l: Lattice | PKAlgebra) -> bool:
    """True iff no chain of prime filters has more than two members."""
    if isinstance(l, PKAlgebra):
        l = l.lattice
    filters = prime_filters(l)
    m = len(filters)
    leq = np.array([[f.members & ~h.members == 0 for h in filters] for f in filters], dtype=bool).reshape(m, m)
    return max_chain_length(poset_from_leq([str(i) for i in range(m)], leq)) <= 2


@dataclass(frozen=True)
class StoneanReport:
    algebra_stone: bool
    short_chains: bool
    upsets_stone: bool

    def as_tuple(self) -> tuple[bool, bool, bool]:
        return (self.algebra_stone, self.short_chains, self.upsets_stone)


def check_stonean_equivalence(a: PKAlgebra) -> StoneanReport:
    """Stone identity on ``a``, chain shape of its filter space, Stone identity
    on the upset algebra; the three must agree."""
    fs = filter_space(a)
    report = StoneanReport(
        axiom_report(a, axioms=("STONE",))["STONE"].passed,
        is_disjoint_short_chains(fs.space.poset),
        axiom_report(upset_algebra(fs.space).algebra, axioms=("STONE",))["STONE"].passed,
    )
    if len(set(report.as_tuple())) != 1:
        raise TheoremViolation(f"Stonean conditions disagree: {report.as_tuple()}")
    return report


@dataclass(frozen=True, eq=False)
class RepresentationWitness:
    universe: tuple[str, ...]
    structure: Covering | FiniteRelation
    blocks: tuple[int, ...]
    target: RoughSetAlgebra
    target_pk: PKAlgebra
    embedding: tuple[int, ...]
    source: PKAlgebra

    @property
    def kind(self) -> str:
        return self.target.kind

    def block_text(self) -> str:
        return " ".join("{" + " ".join(self.universe[i] for i in bits(b)) + "}" for b in self.blocks)

    def image(self, x: int) -> tuple[int, int]:
        p = self.target.system.pairs[self.embedding[x]]
        return p.lower, p.upper

    def lines(self) -> list[str]:
        out = []
        for x in range(self.source.n):
            lo, up = self.image(x)
            out.append(
                f"{self.source.labels[x]} -> ({subset_label(self.universe, lo)}, {subset_label(self.universe, up)})"
            )
        return out


def _search(a: PKAlgebra, candidates: Iterator, max_universe: int) -> RepresentationWitness:
    for universe, structure, blocks, build in candidates:
        rs, pk = build()
        if pk.n < a.n:
            continue
        f = find_embedding(a, pk, dst_signatures=signatures(pk))
        if f is not None:
            if not is_homomorphism(f, a, pk, injective=True):
                raise TheoremViolation("embedding search returned a non-embedding")
            return RepresentationWitness(universe, structure, tuple(blocks), rs, pk, tuple(f), a)
    raise NoWitnessWithinBudget(max_universe)


def _tolerance_builder(cov: Covering):
    def build():
        rs = rs_algebra_tolerance(cov, check=False)
        return rs, rs.pk()

    return build


def _tolerance_candidates(max_universe: int):
    for n in range(1, max_universe + 1):
        for cov in irredundant_coverings(n):
            yield cov.universe, cov, cov.blocks, _tolerance_builder(cov)


def verify_theorem_main(a: PKAlgebra, max_universe: int) -> RepresentationWitness:
    """First tolerance rough set algebra (irredundant coverings by universe
    size, block count, canonical form) into which ``a`` embeds."""
    _require_regular(a)
    return _search(a, _tolerance_candidates(max_universe), max_universe)


def _equivalence_candidates(max_universe: int):
    for n in range(1, max_universe + 1):
        for rel, blocks in equivalences_up_to_iso(n):

            def build(r=rel):
                rs = rs_algebra_equivalence(r)
                pk = rpk_from_rds(rs.lattice, rs.star, rs.plus)
                if pk.neg != rs.neg:
                    raise TheoremViolation("correspondence negation differs from the set formula")
                return rs, pk

            yield rel.universe, rel, blocks, build


def verify_theorem_mainB(a: PKAlgebra, max_universe: int) -> RepresentationWitness:
    """First equivalence rough set algebra, with negation from the double
    Stone operations, into which ``a`` embeds. Requires the Stone identity."""
    _require_regular(a)
    stone = axiom_report(a, axioms=("STONE",))["STONE"]
    if not stone.passed:
        raise PreconditionViolated("STONE", stone.format(a.labels))
    return _search(a, _equivalence_candidates(max_universe), max_universe)


__all__ = [
    "CanonicalEmbedding",
    "FilterSpace",
    "PrimeFilter",
    "RepresentationWitness",
    "StoneanReport",
    "canonical_embedding_h",
    "check_prime_chain_regularity",
    "check_stonean_equivalence",
    "filter_space",
    "g_of_prime_filter",
    "is_prime_filter",
    "kv_space_of_algebra",
    "prime_filters",
    "prime_filters_bruteforce",
    "verify_theorem_main",
    "verify_theorem_mainB",
]
