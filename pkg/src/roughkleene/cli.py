"""Command line interface.

Exit codes: 0 on success, 1 on a semantic failure (a FAIL verdict, a
non-regular algebra, no witness within budget), 2 on malformed input.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

from . import __version__
from .algebra import (
    AXIOMS,
    PKAlgebra,
    axiom_report,
    enumerate_kleene_negations,
    pk_algebra,
    rpk_from_rds,
)
from .errors import InputError, KindMismatch, NotRegular, PreconditionViolated, RoughKleeneError
from .formats import (
    emit_algebra,
    is_covering_text,
    parse_algebra,
    parse_covering,
    parse_relation,
    read_text,
)
from .kvspace import enumerate_kv_spaces, is_disjoint_short_chains, profile, upset_algebra, validate_kv
from .order import Lattice, Poset, max_chain_length, poset_from_leq
from .representation import (
    filter_space,
    g_of_prime_filter,
    prime_filters,
    verify_theorem_main,
    verify_theorem_mainB,
)
from .roughsets import (
    classify_relation,
    induced_tolerance,
    rs_algebra_equivalence,
    rs_algebra_quasiorder,
    rs_algebra_tolerance,
    rs_system,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


@dataclass
class Loaded:
    lattice: Lattice
    neg: tuple | None
    star: tuple | None
    plus: tuple | None


def _load(path: str) -> Loaded:
    f = parse_algebra(read_text(path))
    lattice = f.lattice()
    return Loaded(lattice, f.table("neg", lattice), f.table("star", lattice), f.table("plus", lattice))


def _pk(data: Loaded) -> PKAlgebra:
    """A pK-algebra from the file: its [neg] table, or the negation the double
    Stone operations determine when only [star]/[plus] are given."""
    if data.neg is None:
        if data.star is None or data.plus is None:
            raise InputError("this command needs a [neg] table, or [star] and [plus]")
        return rpk_from_rds(data.lattice, data.star, data.plus)
    a = pk_algebra(data.lattice, data.neg)
    for name in ("star", "plus"):
        given = getattr(data, name)
        if given is not None and given != getattr(a, name):
            raise PreconditionViolated(name.upper(), f"[{name}] disagrees with the table the lattice determines")
    return a


def _print(lines):
    for line in lines:
        print(line)


def cmd_check(args) -> int:
    data = _load(args.path)
    explicit = args.axioms != "all"
    selected = AXIOMS
    if explicit:
        selected = [a.strip().upper() for a in args.axioms.split(",") if a.strip()]
        unknown = [a for a in selected if a not in AXIOMS]
        if unknown:
            raise InputError(f"unknown axiom {unknown[0]!r}; choose from {', '.join(AXIOMS)}")
    report = axiom_report(data.lattice, neg=data.neg, star=data.star, plus=data.plus, axioms=selected)
    # without a selection, axioms lacking their tables are left out silently
    verdicts = [v for v in report.verdicts.values() if explicit or v.status != "SKIP"]
    _print(v.format(data.lattice.labels, args.verbose) for v in verdicts)
    return EXIT_OK if all(v.passed for v in verdicts) else EXIT_FAIL


def _filter_order(labels, filters) -> Poset:
    m = len(filters)
    leq = [[f.members & ~h.members == 0 for h in filters] for f in filters]
    return poset_from_leq(labels, leq if m else [])


def cmd_primefilters(args) -> int:
    data = _load(args.path)
    lattice = data.lattice
    filters = prime_filters(lattice)
    labels = [f.label(lattice.labels) for f in filters]
    for lab, f in zip(labels, filters):
        members = " ".join(lattice.labels[i] for i in range(lattice.n) if i in f)
        print(f"{lab} = {{{members}}}")
    order = _filter_order(labels, filters)
    for a, b in order.covers():
        print(f"{labels[a]} ⊂ {labels[b]}")
    print(f"longest chain: {max_chain_length(order)}")
    if data.neg is None:
        return EXIT_OK
    a = _pk(data)
    position = {f.members: i for i, f in enumerate(filters)}
    g = [position[g_of_prime_filter(a, f).members] for f in filters]
    for i, j in enumerate(g):
        print(f"g({labels[i]}) = {labels[j]}")
    report = validate_kv(order, g)
    _print(report.lines())
    return EXIT_OK


def cmd_kvspace(args) -> int:
    data = _load(args.path)
    m = axiom_report(data.lattice, neg=data.neg, star=data.star, plus=data.plus, axioms=("M",))["M"]
    if m.status == "FAIL":
        raise NotRegular(tuple(data.lattice.labels[e] for _, e in m.counterexample))
    fs = filter_space(_pk(data))
    k = fs.space
    for i, f in enumerate(fs.filters):
        members = " ".join(data.lattice.labels[x] for x in range(data.lattice.n) if x in f)
        print(f"{k.labels[i]} = {{{members}}}")
    for a, b in k.poset.covers():
        print(f"{k.labels[a]} ⊂ {k.labels[b]}")
    for i in range(k.n):
        print(f"g({k.labels[i]}) = {k.labels[k.g[i]]}")
    report = validate_kv(k.poset, k.g)
    _print(report.lines())
    return EXIT_OK if report.ok else EXIT_FAIL


def _pair_comments(system) -> list[str]:
    return [f"{system.labels[i]} = {system.describe(i)}" for i in range(len(system))]


def cmd_roughset(args) -> int:
    text = read_text(args.path)
    kind = args.kind
    if is_covering_text(text):
        cov = parse_covering(text)
        if kind not in ("auto", "tolerance"):
            actual = classify_relation(induced_tolerance(cov))
            if kind == "equivalence" and actual.is_equivalence:
                return _emit_equivalence(induced_tolerance(cov), args)
            if kind == "quasiorder" and actual.is_quasiorder:
                return _emit_quasiorder(induced_tolerance(cov), args)
            raise KindMismatch(f"covering induces a {actual.kind} relation, but --kind {kind} was requested")
        rs = rs_algebra_tolerance(cov)
        meta = {"kind": "tolerance", "universe": " ".join(cov.universe), "is_lattice": "true"}
        return _emit(rs.system, rs.lattice, {"neg": rs.neg, "star": rs.star, "plus": rs.pk().plus}, None, meta, args)
    r = parse_relation(text)
    actual = classify_relation(r)
    if kind == "auto":
        kind = actual.kind
    if kind == "equivalence":
        if not actual.is_equivalence:
            raise KindMismatch(f"relation is {actual.kind}, not an equivalence")
        return _emit_equivalence(r, args)
    if kind == "quasiorder":
        if not actual.is_quasiorder:
            raise KindMismatch(f"relation is {actual.kind}, not a quasiorder")
        return _emit_quasiorder(r, args)
    if kind == "tolerance" and not actual.is_tolerance:
        raise KindMismatch(f"relation is {actual.kind}, not a tolerance")
    # a bare relation: the order only, since no algebra is guaranteed
    s = rs_system(r)
    meta = {"kind": actual.kind, "universe": " ".join(r.universe), "is_lattice": str(s.is_lattice).lower()}
    return _emit(s, s.poset, {}, None, meta, args)


def _emit_equivalence(r, args) -> int:
    rs = rs_algebra_equivalence(r)
    meta = {"kind": "equivalence", "universe": " ".join(r.universe), "is_lattice": "true"}
    return _emit(rs.system, rs.lattice, {"neg": rs.neg, "star": rs.star, "plus": rs.plus}, None, meta, args)


def _emit_quasiorder(r, args) -> int:
    rs = rs_algebra_quasiorder(r)
    meta = {"kind": "quasiorder", "universe": " ".join(r.universe), "is_lattice": "true"}
    return _emit(rs.system, rs.lattice, {"neg": rs.neg}, rs.imp, meta, args)


def _emit(system, order, tables, imp, meta, args) -> int:
    if args.emit == "pairs":
        _print(_pair_comments(system))
    else:
        sys.stdout.write(emit_algebra(order, tables, imp, meta, comments=_pair_comments(system)))
    return EXIT_OK


def cmd_represent(args) -> int:
    a = _pk(_load(args.path))
    if args.mode == "main":
        w = verify_theorem_main(a, args.max_universe)
        print(f"universe: {' '.join(w.universe)}")
        print(f"covering: {w.block_text()}")
    else:
        w = verify_theorem_mainB(a, args.max_universe)
        print(f"universe: {' '.join(w.universe)}")
        print(f"partition: {w.block_text()}")
    print(f"rough set algebra: {w.target_pk.n} elements")
    _print(w.lines())
    return EXIT_OK


def cmd_negations(args) -> int:
    lattice = _load(args.path).lattice
    tables = enumerate_kleene_negations(lattice)
    print(f"{len(tables)} Kleene negation(s)")
    for i, t in enumerate(tables, start=1):
        entries = " ".join(f"{lattice.labels[x]}:{lattice.labels[t[x]]}" for x in range(lattice.n))
        print(f"#{i} {entries}")
    return EXIT_OK


def cmd_enumerate(args) -> int:
    spaces = enumerate_kv_spaces(args.max_points)
    for k in spaces:
        alg = upset_algebra(k).algebra
        stone = axiom_report(alg, axioms=("STONE",))["STONE"].status
        chains = "disjoint-short-chains" if is_disjoint_short_chains(k.poset) else "linked"
        if args.emit == "spaces":
            print(k.describe())
        print(f"points={k.n} {profile(k)} height={max_chain_length(k.poset)} {chains} upsets={alg.n} STONE={stone}")
    print(f"total: {len(spaces)} classes with at most {args.max_points} points")
    return EXIT_OK


def _dot(name: str, labels, covers) -> str:
    out = [f"digraph {name} {{", "  rankdir=BT;"]
    out += [f'  n{i} [label="{lab}"];' for i, lab in enumerate(labels)]
    out += [f"  n{a} -> n{b};" for a, b in covers]
    out.append("}")
    return "\n".join(out) + "\n"


def cmd_export_dot(args) -> int:
    lattice = _load(args.path).lattice
    if args.what == "hasse":
        sys.stdout.write(_dot("hasse", lattice.labels, lattice.poset.covers()))
    else:
        filters = prime_filters(lattice)
        labels = [f.label(lattice.labels) for f in filters]
        sys.stdout.write(_dot("filters", labels, _filter_order(labels, filters).covers()))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="roughkleene",
        description="Finite rough set algebras and regular pseudocomplemented Kleene algebras.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="report axiom verdicts for an algebra file")
    p.add_argument("path")
    p.add_argument("--axioms", default="all", help="comma-separated axiom ids, or 'all'")
    p.add_argument("-v", "--verbose", action="store_true", help="show which law failed and how")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("primefilters", help="list prime filters and the induced g")
    p.add_argument("path")
    p.set_defaults(func=cmd_primefilters)

    p = sub.add_parser("kvspace", help="build the Kleene–Varlet space of prime filters")
    p.add_argument("path")
    p.set_defaults(func=cmd_kvspace)

    p = sub.add_parser("roughset", help="rough set algebra of a relation or covering file")
    p.add_argument("path")
    p.add_argument("--kind", choices=("auto", "equivalence", "quasiorder", "tolerance"), default="auto")
    p.add_argument("--emit", choices=("algebra", "pairs"), default="algebra")
    p.set_defaults(func=cmd_roughset)

    p = sub.add_parser("represent", help="search for a rough set representation")
    p.add_argument("path")
    p.add_argument("--mode", choices=("main", "mainB"), default="main")
    p.add_argument("--max-universe", type=int, default=5)
    p.set_defaults(func=cmd_represent)

    p = sub.add_parser("negations", help="enumerate Kleene negations of a lattice")
    p.add_argument("path")
    p.set_defaults(func=cmd_negations)

    p = sub.add_parser("enumerate", help="catalog of small Kleene–Varlet spaces")
    p.add_argument("--max-points", type=int, default=4)
    p.add_argument("--emit", choices=("catalog", "spaces"), default="catalog")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("export-dot", help="Graphviz text for a Hasse diagram")
    p.add_argument("path")
    p.add_argument("--what", choices=("hasse", "filters"), default="hasse")
    p.set_defaults(func=cmd_export_dot)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except RoughKleeneError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
