"""Named small algebras, relations and coverings used across tests and docs."""

from __future__ import annotations

from .algebra import PKAlgebra, neg_from_labels, pk_algebra
from .order import Lattice, lattice_of, poset_from_covers

EX7_COVERS = [("0", "a"), ("0", "b"), ("a", "d"), ("b", "d"), ("d", "f"), ("d", "g"), ("f", "1"), ("g", "1")]

# product of two 3-chains: a=(1,0) c=(2,0) b=(0,1) e=(0,2) d=(1,1) f=(2,1) g=(1,2)
G9_COVERS = [
    ("0", "a"), ("0", "b"), ("a", "c"), ("a", "d"), ("b", "d"), ("b", "e"),
    ("c", "f"), ("d", "f"), ("d", "g"), ("e", "g"), ("f", "1"), ("g", "1"),
]  # fmt: skip


def chain(labels) -> Lattice:
    labels = [str(x) for x in labels]
    return lattice_of(poset_from_covers(labels, zip(labels, labels[1:])))


def c2() -> Lattice:
    return chain(["0", "1"])


def c3() -> Lattice:
    return chain(["0", "d", "1"])


def c4() -> Lattice:
    return chain(["0", "a", "b", "1"])


def ex7() -> Lattice:
    return lattice_of(poset_from_covers(["0", "a", "b", "d", "f", "g", "1"], EX7_COVERS))


def g9() -> Lattice:
    return lattice_of(poset_from_covers(["0", "a", "b", "c", "d", "e", "f", "g", "1"], G9_COVERS))


def diamond() -> Lattice:
    """The four-element Boolean lattice C2 × C2."""
    return lattice_of(poset_from_covers(["0", "a", "b", "1"], [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")]))


def m3() -> Lattice:
    return lattice_of(
        poset_from_covers(
            ["0", "p", "q", "r", "1"],
            [("0", "p"), ("0", "q"), ("0", "r"), ("p", "1"), ("q", "1"), ("r", "1")],
        )
    )


def n5() -> Lattice:
    return lattice_of(
        poset_from_covers(["0", "p", "q", "r", "1"], [("0", "p"), ("p", "q"), ("q", "1"), ("0", "r"), ("r", "1")])
    )


def _reversal(l: Lattice) -> tuple:
    return tuple(range(l.n - 1, -1, -1))


def c2_pk() -> PKAlgebra:
    return pk_algebra(c2(), _reversal(c2()))


def c3_pk() -> PKAlgebra:
    return pk_algebra(c3(), _reversal(c3()))


def c4_pk() -> PKAlgebra:
    """The 4-chain with order reversal: a Kleene algebra that is not regular."""
    return pk_algebra(c4(), _reversal(c4()))


def ex7_pk(variant: int = 1) -> PKAlgebra:
    """Variant 1: ∼a = g, ∼b = f. Variant 2: ∼a = f, ∼b = g."""
    l = ex7()
    if variant == 1:
        neg = neg_from_labels(l, {"0": "1", "a": "g", "b": "f", "d": "d"})
    else:
        neg = neg_from_labels(l, {"0": "1", "a": "f", "b": "g", "d": "d"})
    return pk_algebra(l, neg)


def g9_pk() -> PKAlgebra:
    l = g9()
    return pk_algebra(l, neg_from_labels(l, {"0": "1", "a": "g", "b": "f", "c": "e", "d": "d"}))


def boolean4_pk() -> PKAlgebra:
    l = diamond()
    return pk_algebra(l, neg_from_labels(l, {"0": "1", "a": "b"}))


# relation fixtures as (universe, pairs) / (universe, blocks)
TOL3 = (["1", "2", "3"], [["1", "2"], ["2", "3"]])
EQ22 = (["1", "2", "3", "4"], [["1", "2"], ["3", "4"]])
QO2 = (["1", "2"], [("1", "1"), ("2", "2"), ("1", "2")])


# first tolerance found by ``find_non_lattice_tolerance(6)``: the path 5-1-3-2-4;
# pairs listed once, symmetric and reflexive closure implied
NON_LATTICE_TOLERANCE = (["1", "2", "3", "4", "5"], [("1", "3"), ("1", "5"), ("2", "3"), ("2", "4")])


def catalog(max_points: int = 4) -> list[tuple[str, PKAlgebra]]:
    """Upset algebras of every Kleene–Varlet space up to ``max_points`` points,
    followed by the named regular fixtures."""
    from .kvspace import enumerate_kv_spaces, profile, upset_algebra

    out = []
    for k in enumerate_kv_spaces(max_points):
        out.append((f"U({k.n}pt {profile(k)})", upset_algebra(k).algebra))
    out += [("C3", c3_pk()), ("EX7/1", ex7_pk(1)), ("EX7/2", ex7_pk(2)), ("G9", g9_pk())]
    return out
