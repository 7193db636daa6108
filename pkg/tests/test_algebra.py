import pytest

import oracles
from roughkleene.algebra import (
    are_isomorphic,
    axiom_report,
    dual_pseudocomplement_table,
    enumerate_kleene_negations,
    find_embedding,
    is_homomorphism,
    pk_algebra,
    pseudocomplement_table,
    rds_from_rpk,
    rpk_from_rds,
    subalgebra_generated,
)
from roughkleene.errors import AxiomViolation, NotDuallyPseudocomplemented, PreconditionViolated
from roughkleene.fixtures import (
    boolean4_pk,
    c2,
    c2_pk,
    c3,
    c3_pk,
    c4,
    c4_pk,
    diamond,
    ex7,
    ex7_pk,
    g9,
    g9_pk,
    m3,
    neg_from_labels,
)
from roughkleene.order import bits


def by_label(l, table):
    return {l.labels[x]: l.labels[table[x]] for x in range(l.n)}


def plain(l):
    return l.meet.tolist(), l.join.tolist(), l.leq.tolist()


class TestPseudocomplements:
    def test_c3(self):
        assert by_label(c3(), pseudocomplement_table(c3())) == {"0": "1", "d": "0", "1": "0"}

    def test_ex7(self):
        t = by_label(ex7(), pseudocomplement_table(ex7()))
        assert t["a"] == "b" and t["b"] == "a"
        assert all(t[x] == "0" for x in "dfg1")

    def test_g9(self):
        l = g9()
        t = by_label(l, pseudocomplement_table(l))
        assert t["a"] == "e" and t["c"] == "e" and t["e"] == "c"
        assert t[t["a"]] == "c"

    @pytest.mark.parametrize("make", [c2, c3, c4, ex7, g9, diamond])
    def test_against_oracle(self, make):
        l = make()
        meet, join, leq = plain(l)
        assert list(pseudocomplement_table(l)) == oracles.pseudocomplements(meet, leq, l.bottom)
        assert list(dual_pseudocomplement_table(l)) == oracles.dual_pseudocomplements(join, leq, l.top)

    def test_dual_c3(self):
        assert by_label(c3(), dual_pseudocomplement_table(c3())) == {"0": "1", "d": "1", "1": "0"}

    def test_dual_g9(self):
        t = by_label(g9(), dual_pseudocomplement_table(g9()))
        assert t["a"] == "1" and t["d"] == "1" and t["f"] == "e"

    def test_dual_m3(self):
        with pytest.raises(NotDuallyPseudocomplemented):
            dual_pseudocomplement_table(m3())


class TestPKAlgebra:
    def test_c3(self):
        a = c3_pk()
        assert a.table("neg")["d"] == "d"

    def test_ex7_first(self):
        a = ex7_pk(1)
        assert a.table("neg") == {"0": "1", "a": "g", "b": "f", "d": "d", "f": "b", "g": "a", "1": "0"}

    def test_diamond_fixing_atoms_fails_k(self):
        l = diamond()
        with pytest.raises(AxiomViolation) as info:
            pk_algebra(l, neg_from_labels(l, {"0": "1", "a": "a", "b": "b"}))
        assert not info.value.report["K"].passed

    def test_plus_is_derived(self):
        a = g9_pk()
        assert all(a.plus[x] == a.neg[a.star[a.neg[x]]] for x in range(a.n))


class TestAxiomReport:
    @pytest.mark.parametrize("variant", [1, 2])
    def test_ex7(self, variant):
        r = axiom_report(ex7_pk(variant))
        assert r["STONE"].status == "FAIL"
        assert r["STONE"].format(ex7().labels) == "AXIOM STONE: FAIL [counterexample: x=a]"
        assert r["M"].passed and r["D"].passed

    def test_ex7_stone_chain(self):
        a = ex7_pk(1)
        star, l = a.star, a.lattice
        x = l.idx("a")
        assert l.labels[star[x]] == "b"
        assert l.labels[star[star[x]]] == "a"
        assert l.labels[l.join[star[x], star[star[x]]]] == "d"
        assert "x*∨x**=d≠1" in axiom_report(a)["STONE"].detail

    def test_g9_all_pass(self):
        r = axiom_report(g9_pk())
        assert r.ok
        assert all(v.status == "PASS" for v in r.verdicts.values())

    def test_c4_m_fails(self):
        r = axiom_report(c4())
        assert r["M"].status == "FAIL"
        assert r["M"].format(c4().labels) == "AXIOM M: FAIL [counterexample: x=a, y=b]"
        assert r["DM1"].status == "SKIP"

    def test_fail_has_assignable_counterexample(self):
        r = axiom_report(c4_pk())
        for v in r.failures():
            assert v.counterexample and all(0 <= e < 4 for _, e in v.counterexample)


class TestNegations:
    def test_ex7_two(self):
        tables = enumerate_kleene_negations(ex7())
        assert len(tables) == 2
        l = ex7()
        assert {by_label(l, t)["a"] for t in tables} == {"f", "g"}

    def test_g9_one(self):
        l = g9()
        (t,) = enumerate_kleene_negations(l)
        got = by_label(l, t)
        assert (got["a"], got["b"], got["c"], got["d"]) == ("g", "f", "e", "d")

    def test_diamond_one(self):
        l = diamond()
        (t,) = enumerate_kleene_negations(l)
        assert by_label(l, t)["a"] == "b"

    @pytest.mark.parametrize("make", [c2, c3, c4, ex7, g9, diamond])
    def test_against_oracle(self, make):
        l = make()
        meet, join, leq = plain(l)
        assert [tuple(t) for t in enumerate_kleene_negations(l)] == oracles.kleene_negations(meet, join, leq)


class TestTransforms:
    def test_c3(self):
        a = rpk_from_rds(c3(), pseudocomplement_table(c3()), dual_pseudocomplement_table(c3()))
        assert a.table("neg")["d"] == "d"

    def test_g9(self):
        l = g9()
        a = rpk_from_rds(l, pseudocomplement_table(l), dual_pseudocomplement_table(l))
        assert a.neg == g9_pk().neg
        assert a.table("neg")["a"] == "g"

    def test_ex7_precondition(self):
        l = ex7()
        with pytest.raises(PreconditionViolated) as info:
            rpk_from_rds(l, pseudocomplement_table(l), dual_pseudocomplement_table(l))
        assert info.value.condition == "STONE"

    @pytest.mark.parametrize("make", [c3_pk, g9_pk, boolean4_pk, c2_pk])
    def test_round_trip(self, make):
        a = make()
        l, star, plus = rds_from_rpk(a)
        assert star == pseudocomplement_table(l) and plus == dual_pseudocomplement_table(l)
        assert rpk_from_rds(l, star, plus).neg == a.neg

    def test_rds_ex7(self):
        with pytest.raises(PreconditionViolated):
            rds_from_rpk(ex7_pk())


class TestMorphisms:
    def test_identity(self):
        assert is_homomorphism((0, 1, 2), c3_pk(), c3_pk(), injective=True)

    def test_constant_top(self):
        v = is_homomorphism((2, 2, 2), c3_pk(), c3_pk())
        assert not v and v.witness == ("bottom", 0)

    def test_subalgebra_g9(self):
        a = g9_pk()
        gen = subalgebra_generated(a, 1 << a.idx("a"))
        assert {a.labels[i] for i in bits(gen)} == {"0", "a", "c", "e", "g", "1"}

    def test_subalgebra_trivial(self):
        assert subalgebra_generated(c2_pk(), 0) == 0b11

    def test_subalgebra_c3(self):
        assert subalgebra_generated(c3_pk(), 1 << 1) == 0b111

    def test_iso_c3(self):
        assert are_isomorphic(c3_pk(), c3_pk()) == (0, 1, 2)

    def test_iso_sizes(self):
        assert are_isomorphic(c3_pk(), c2_pk()) is None

    def test_iso_ex7(self):
        f = are_isomorphic(ex7_pk(1), ex7_pk(2))
        l = ex7()
        got = {l.labels[x]: l.labels[f[x]] for x in range(l.n)}
        # the negations differ exactly at f and g, so the isomorphism swaps those
        assert got == {"0": "0", "a": "a", "b": "b", "d": "d", "f": "g", "g": "f", "1": "1"}
        assert is_homomorphism(f, ex7_pk(1), ex7_pk(2), injective=True)

    def test_swap_a_b_is_not_an_iso(self):
        l = ex7()
        swap = [l.idx(x) for x in ["0", "b", "a", "d", "g", "f", "1"]]
        assert not is_homomorphism(swap, ex7_pk(1), ex7_pk(2))

    @pytest.mark.parametrize(
        "src,dst", [(c3_pk, ex7_pk), (c2_pk, c3_pk), (c3_pk, g9_pk), (boolean4_pk, g9_pk), (ex7_pk, ex7_pk)]
    )
    def test_embedding_search_vs_oracle(self, src, dst):
        s, d = src(), dst()
        expected = oracles.embeddings(oracles.as_plain(s), oracles.as_plain(d))
        found = find_embedding(s, d)
        assert (found is None) == (not expected)
        if found is not None:
            assert tuple(found) in expected
