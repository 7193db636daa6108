"""Text formats for algebras, relations and coverings.

All formats are UTF-8, use bracketed section headers and treat ``#`` as the
start of a comment. Algebra files::

    [elements]
    0 a b 1
    [covers]
    0<a<1
    0<b<1
    [neg]
    0:1
    a:b
    ...

Optional sections are ``[neg]``, ``[star]``, ``[plus]`` (``x:y`` entries, total
when present), ``[imp]`` (``x y z`` meaning ``x → y = z``) and ``[meta]``
(``key=value``). Relation files have ``[universe]``, ``[pairs]`` (``x,y``) and
``[closure]`` keywords; covering files have ``[universe]`` and ``[blocks]``
with one block per line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import InputError, ParseError
from .order import Lattice, Poset, lattice_of, poset_from_covers
from .roughsets import Covering, FiniteRelation

UNARY_SECTIONS = ("neg", "star", "plus")
ALGEBRA_SECTIONS = ("elements", "covers", *UNARY_SECTIONS, "imp", "meta")
RELATION_SECTIONS = ("universe", "pairs", "closure")
COVERING_SECTIONS = ("universe", "blocks", "block")
CLOSURES = ("reflexive", "symmetric", "transitive")

_HEADER = re.compile(r"^\[([A-Za-z]+)\]$")


def _sections(text: str, allowed) -> dict[str, list[tuple[int, str]]]:
    """Group non-empty, comment-stripped lines under their section header."""
    out: dict[str, list[tuple[int, str]]] = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _HEADER.match(line)
        if m:
            current = m.group(1).lower()
            if current not in allowed:
                raise ParseError(lineno, f"unknown section [{current}]")
            if current in out:
                raise ParseError(lineno, f"section [{current}] repeated")
            out[current] = [(lineno, "")]
            continue
        if current is None:
            raise ParseError(lineno, "content before the first section header")
        out[current].append((lineno, line))
    return out


def _header_line(lines) -> int:
    return lines[0][0]


def _body(lines):
    return lines[1:]


@dataclass
class AlgebraFile:
    labels: list[str]
    covers: list[tuple[str, str]]
    tables: dict[str, dict[str, str]] = field(default_factory=dict)
    imp: dict[tuple[str, str], str] | None = None
    meta: dict[str, str] = field(default_factory=dict)
    lines: dict[str, int] = field(default_factory=dict)  # section -> header line

    def lattice(self) -> Lattice:
        return lattice_of(poset_from_covers(self.labels, self.covers))

    def table(self, name: str, lattice: Lattice) -> tuple | None:
        """Unary table ``name`` as indices, or None when the section is absent."""
        entries = self.tables.get(name)
        if entries is None:
            return None
        missing = [x for x in lattice.labels if x not in entries]
        if missing:
            raise ParseError(self.lines[name], f"[{name}] has no entry for {missing[0]!r}")
        return tuple(lattice.idx(entries[x]) for x in lattice.labels)

    def imp_table(self, lattice: Lattice) -> np.ndarray | None:
        if self.imp is None:
            return None
        out = np.empty((lattice.n, lattice.n), dtype=np.int64)
        for x in lattice.labels:
            for y in lattice.labels:
                if (x, y) not in self.imp:
                    raise ParseError(self.lines["imp"], f"[imp] has no entry for {x!r} {y!r}")
                out[lattice.idx(x), lattice.idx(y)] = lattice.idx(self.imp[(x, y)])
        return out


def parse_algebra(text: str) -> AlgebraFile:
    secs = _sections(text, ALGEBRA_SECTIONS)
    if "elements" not in secs:
        raise ParseError(1, "missing [elements] section")
    labels: list[str] = []
    seen = {}
    for lineno, line in _body(secs["elements"]):
        for tok in line.split():
            if tok in seen:
                raise ParseError(lineno, f"duplicate element {tok!r}")
            seen[tok] = lineno
            labels.append(tok)

    def known(lineno, tok):
        if tok not in seen:
            raise ParseError(lineno, f"unknown element {tok!r}")
        return tok

    covers = []
    for lineno, line in _body(secs.get("covers", [(0, "")])):
        chain = [t.strip() for t in line.split("<")]
        if len(chain) < 2 or any(not t for t in chain):
            raise ParseError(lineno, f"expected x<y, got {line!r}")
        for lo, hi in zip(chain, chain[1:]):
            covers.append((known(lineno, lo), known(lineno, hi)))

    tables = {}
    for name in UNARY_SECTIONS:
        if name not in secs:
            continue
        entries = {}
        for lineno, line in _body(secs[name]):
            parts = [t.strip() for t in line.split(":")]
            if len(parts) != 2 or not all(parts):
                raise ParseError(lineno, f"expected x:y, got {line!r}")
            x, y = known(lineno, parts[0]), known(lineno, parts[1])
            if x in entries and entries[x] != y:
                raise ParseError(lineno, f"[{name}] gives two values for {x!r}")
            entries[x] = y
        tables[name] = entries

    imp = None
    if "imp" in secs:
        imp = {}
        for lineno, line in _body(secs["imp"]):
            parts = line.split()
            if len(parts) != 3:
                raise ParseError(lineno, f"expected 'x y z', got {line!r}")
            x, y, z = (known(lineno, t) for t in parts)
            imp[(x, y)] = z

    meta = {}
    for lineno, line in _body(secs.get("meta", [(0, "")])):
        if "=" not in line:
            raise ParseError(lineno, f"expected key=value, got {line!r}")
        k, v = line.split("=", 1)
        meta[k.strip()] = v.strip()

    return AlgebraFile(labels, covers, tables, imp, meta, {k: _header_line(v) for k, v in secs.items()})


def emit_algebra(
    lattice: Lattice | Poset,
    tables: dict[str, tuple] | None = None,
    imp: np.ndarray | None = None,
    meta: dict[str, str] | None = None,
    comments: list[str] | None = None,
) -> str:
    """Canonical text: Hasse covers only, tables in carrier order.

    A bare :class:`Poset` is accepted for orders that are not lattices.
    """
    poset = lattice.poset if isinstance(lattice, Lattice) else lattice
    labels = poset.labels
    out = []
    for c in comments or []:
        out.append(f"# {c}")
    if meta:
        out.append("[meta]")
        out += [f"{k}={v}" for k, v in meta.items()]
    out.append("[elements]")
    out.append(" ".join(labels))
    out.append("[covers]")
    out += [f"{labels[a]}<{labels[b]}" for a, b in poset.covers()]
    for name in UNARY_SECTIONS:
        t = (tables or {}).get(name)
        if t is None:
            continue
        out.append(f"[{name}]")
        out += [f"{labels[x]}:{labels[t[x]]}" for x in range(poset.n)]
    if imp is not None:
        out.append("[imp]")
        out += [f"{labels[x]} {labels[y]} {labels[imp[x, y]]}" for x in range(poset.n) for y in range(poset.n)]
    return "\n".join(out) + "\n"


def canonicalize_algebra(text: str) -> str:
    """Parse and re-emit."""
    f = parse_algebra(text)
    lattice = f.lattice()
    tables = {name: f.table(name, lattice) for name in f.tables}
    return emit_algebra(lattice, tables, f.imp_table(lattice), f.meta or None)


def _universe(secs) -> tuple[list[str], dict[str, int]]:
    if "universe" not in secs:
        raise ParseError(1, "missing [universe] section")
    labels, seen = [], {}
    for lineno, line in _body(secs["universe"]):
        for tok in line.replace(",", " ").split():
            if tok in seen:
                raise ParseError(lineno, f"duplicate point {tok!r}")
            seen[tok] = lineno
            labels.append(tok)
    return labels, seen


def parse_relation(text: str) -> FiniteRelation:
    secs = _sections(text, RELATION_SECTIONS)
    labels, seen = _universe(secs)
    pairs = []
    for lineno, line in _body(secs.get("pairs", [(0, "")])):
        parts = [t.strip() for t in line.split(",")]
        if len(parts) != 2 or not all(parts):
            raise ParseError(lineno, f"expected x,y, got {line!r}")
        for t in parts:
            if t not in seen:
                raise ParseError(lineno, f"unknown point {t!r}")
        pairs.append(tuple(parts))
    words = set()
    for lineno, line in _body(secs.get("closure", [(0, "")])):
        for word in line.replace(",", " ").split():
            if word not in CLOSURES:
                raise ParseError(lineno, f"unknown closure {word!r}")
            words.add(word)
    r = FiniteRelation.from_pairs(labels, pairs)
    if "reflexive" in words:
        r = r.reflexive_closure()
    if "symmetric" in words:
        r = r.symmetric_closure()
    if "transitive" in words:
        r = r.transitive_closure()
    return r


def parse_covering(text: str) -> Covering:
    secs = _sections(text, COVERING_SECTIONS)
    labels, seen = _universe(secs)
    if "blocks" in secs and "block" in secs:
        raise ParseError(_header_line(secs["block"]), "use either [blocks] or [block], not both")
    body = _body(secs.get("blocks") or secs.get("block") or [(0, "")])
    blocks = []
    for lineno, line in body:
        toks = line.replace(",", " ").replace("{", " ").replace("}", " ").split()
        if not toks:
            raise ParseError(lineno, "empty block")
        for t in toks:
            if t not in seen:
                raise ParseError(lineno, f"unknown point {t!r}")
        blocks.append(toks)
    return Covering.from_blocks(labels, blocks)


def is_covering_text(text: str) -> bool:
    """True when the text has a [blocks] or [block] section."""
    for raw in text.splitlines():
        m = _HEADER.match(raw.split("#", 1)[0].strip())
        if m and m.group(1).lower() in ("blocks", "block"):
            return True
    return False


def emit_relation(r: FiniteRelation) -> str:
    out = ["[universe]", " ".join(r.universe), "[pairs]"]
    out += [f"{r.universe[i]},{r.universe[j]}" for i, j in np.argwhere(r.pairs)]
    return "\n".join(out) + "\n"


def emit_covering(c: Covering) -> str:
    out = ["[universe]", " ".join(c.universe), "[blocks]"]
    out += [" ".join(b) for b in c.block_labels()]
    return "\n".join(out) + "\n"


def read_text(path: str | Path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
