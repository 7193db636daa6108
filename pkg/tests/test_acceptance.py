"""Acceptance criteria, one test each, with their runtime bounds.

The terminal summary prints one PASS/FAIL line per criterion.
"""

import time
from contextlib import contextmanager

import pytest

import oracles
from roughkleene.algebra import axiom_report, enumerate_kleene_negations, rds_from_rpk, rpk_from_rds
from roughkleene.fixtures import TOL3, c3_pk, c4_pk, catalog, ex7, ex7_pk, g9, g9_pk
from roughkleene.kvspace import enumerate_kv_spaces, star_on_upsets, stonean_star, upset_algebra
from roughkleene.order import bits, is_disjoint_short_chains, lattice_of
from roughkleene.representation import (
    canonical_embedding_h,
    check_prime_chain_regularity,
    check_stonean_equivalence,
    prime_filters,
    prime_filters_bruteforce,
    verify_theorem_main,
    verify_theorem_mainB,
)
from roughkleene.roughsets import (
    Covering,
    equivalence_from_blocks,
    find_non_lattice_tolerance,
    irredundant_coverings,
    rs_algebra_equivalence,
    rs_algebra_tolerance,
    rs_system,
    set_partitions,
    verify_lattice_formulas,
)


@contextmanager
def within(seconds):
    start = time.perf_counter()
    yield
    elapsed = time.perf_counter() - start
    assert elapsed < seconds, f"took {elapsed:.2f}s, bound is {seconds}s"


def regular(a):
    return axiom_report(a, axioms=("M",))["M"].passed


@pytest.mark.acceptance(1, "example reproduction", 1)
def test_example_reproduction():
    with within(1):
        l = ex7()
        assert len(enumerate_kleene_negations(l)) == 2
        a = ex7_pk(1)
        stone = axiom_report(a)["STONE"]
        assert stone.format(l.labels) == "AXIOM STONE: FAIL [counterexample: x=a]"
        x = l.idx("a")
        s, ss = a.star[x], a.star[a.star[x]]
        assert (l.labels[s], l.labels[ss], l.labels[l.join[s, ss]]) == ("b", "a", "d")
        assert l.join[s, ss] != l.top
        assert stone.detail == "x*=b, x**=a, x*∨x**=d≠1"

        assert len(enumerate_kleene_negations(g9())) == 1
        r = axiom_report(g9_pk())
        assert all(v.status == "PASS" for v in r.verdicts.values())
        assert r["STONE"].passed and r["DUAL_STONE"].passed


@pytest.mark.acceptance(2, "rough set construction suite", 300)
def test_construction_suite():
    with within(300):
        partitions = 0
        for n in range(1, 6):
            universe = [str(i + 1) for i in range(n)]
            for blocks in set_partitions(n):
                rs = rs_algebra_equivalence(equivalence_from_blocks(universe, blocks))
                report = axiom_report(rs.pk())
                assert report.passed("DISTRIBUTIVE", "STONE", "DUAL_STONE", "M"), report.lines()
                formulas = verify_lattice_formulas(rs.system, "equivalence", lattice=rs.lattice)
                assert formulas, formulas.witness
                partitions += 1
        assert partitions == 1 + 2 + 5 + 15 + 52

        coverings = 0
        for n in range(1, 6):
            for cov in irredundant_coverings(n):
                rs = rs_algebra_tolerance(cov)
                report = axiom_report(rs.pk())
                assert report.passed("DM1", "DM2", "K", "M", "D"), report.lines()
                formulas = verify_lattice_formulas(rs.system, "tolerance", lattice=rs.lattice)
                assert formulas, formulas.witness
                coverings += 1
        assert coverings == sum(len(oracles.irredundant_classes(n)) for n in range(1, 5)) + len(irredundant_coverings(5))


@pytest.mark.acceptance(3, "non-lattice tolerance regression", 120)
def test_non_lattice_tolerance():
    with within(120):
        r = find_non_lattice_tolerance(max_points=6)
        assert r is not None and len(r.universe) <= 6
        s = rs_system(r)
        assert not s.is_lattice
        assert oracles.bound_scan(s.poset.leq.tolist()) is None


def six_operations_preserved(a, target, f):
    t = target
    for x in range(a.n):
        assert t.neg[f[x]] == f[a.neg[x]]
        assert t.star[f[x]] == f[a.star[x]]
        assert t.plus[f[x]] == f[a.plus[x]]
        for y in range(a.n):
            assert t.lattice.meet[f[x], f[y]] == f[a.lattice.meet[x, y]]
            assert t.lattice.join[f[x], f[y]] == f[a.lattice.join[x, y]]
    assert f[a.lattice.bottom] == t.lattice.bottom and f[a.lattice.top] == t.lattice.top
    assert len(set(f)) == a.n


@pytest.mark.acceptance(4, "embedding theorem suite", 60)
def test_embedding_suite():
    with within(60):
        names = []
        for name, a in catalog(max_points=4):
            e = canonical_embedding_h(a)
            six_operations_preserved(a, e.target.algebra, e.mapping)
            names.append(name)
        assert {"C3", "EX7/1", "EX7/2", "G9"} <= set(names)


@pytest.mark.acceptance(5, "regularity tri-equivalence", 60)
def test_regularity():
    with within(60):
        for _, a in catalog(max_points=4) + [("C4", c4_pk())]:
            r = axiom_report(a, axioms=("M", "D"))
            triple = (r["M"].passed, r["D"].passed, check_prime_chain_regularity(a))
            assert len(set(triple)) == 1, triple
        r = axiom_report(c4_pk(), axioms=("M", "D"))
        assert (r["M"].passed, r["D"].passed, check_prime_chain_regularity(c4_pk())) == (False, False, False)


@pytest.mark.acceptance(6, "Stonean tri-equivalence", 60)
def test_stonean():
    with within(60):
        for _, a in catalog(max_points=4):
            if regular(a):
                check_stonean_equivalence(a)
        assert check_stonean_equivalence(g9_pk()).as_tuple() == (True, True, True)
        assert check_stonean_equivalence(ex7_pk()).as_tuple() == (False, False, False)


@pytest.mark.acceptance(7, "Stonean pseudocomplement formula", 60)
def test_stonean_formula():
    with within(60):
        checked = 0
        for k in enumerate_kv_spaces(6):
            if not is_disjoint_short_chains(k.poset):
                continue
            for u in upset_algebra(k).family:
                assert stonean_star(k, u) == star_on_upsets(k, u)
                checked += 1
        assert checked > 0


@pytest.mark.acceptance(8, "representation witnesses", 120)
def test_witnesses():
    with within(120):
        w = verify_theorem_main(c3_pk(), 3)
        assert len(w.universe) <= 3
        w = verify_theorem_main(ex7_pk(), 3)
        assert len(w.universe) <= 3
        assert w.structure == Covering.from_blocks(*TOL3)
        w = verify_theorem_mainB(g9_pk(), 4)
        assert len(w.universe) <= 4
        w = verify_theorem_mainB(c3_pk(), 2)
        assert len(w.universe) <= 2


@pytest.mark.acceptance(9, "transform round trips", 60)
def test_round_trips():
    with within(60):
        seen = 0
        for _, a in catalog(max_points=4):
            if not (regular(a) and axiom_report(a, axioms=("STONE",))["STONE"].passed):
                continue
            l, star, plus = rds_from_rpk(a)
            b = rpk_from_rds(l, star, plus)
            assert b.neg == a.neg
            assert rds_from_rpk(b)[1:] == (star, plus)
            assert len(enumerate_kleene_negations(l)) == 1
            seen += 1
        assert seen > 0


@pytest.mark.acceptance(10, "oracle agreement", 60)
def test_oracles():
    with within(60):
        for _, a in catalog(max_points=4):
            l = a.lattice
            meet, join = oracles.bound_scan(l.leq.tolist())
            assert lattice_of(l.poset).meet.tolist() == meet
            assert lattice_of(l.poset).join.tolist() == join
            if l.n > 12:
                continue
            expected = set(oracles.prime_filters_by_subsets(meet, join, l.n))
            assert {frozenset(bits(f.members)) for f in prime_filters(l)} == expected
            assert prime_filters(l) == prime_filters_bruteforce(l)
