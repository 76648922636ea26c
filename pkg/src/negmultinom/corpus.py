"""Golden corpus of published moment formulas and comparison against
derived polynomials.

File format (``data/golden_moments.txt``, version 1), line oriented::

    format negmultinom-golden 1
    record <noncentral|central> <pattern, e.g. 3,2,1>
    printed <formula as printed, see below>
    term <degree> <e1,...,eD> <integer coefficient>
    misprint <degree>:<e1,...,eD>
    note <free text>
    end

``degree`` is the falling-factorial order ``K`` for non-central records
and the power of ``r`` for central ones.  Variable ``y<j>`` refers to the
``j``-th entry of the pattern; a record may mention indices beyond its
pattern length (``D`` is then larger than the pattern length).  ``term``
lines are the canonical expansion of the ``printed`` line and are checked
against it on load.  ``misprint`` lines list the keys at which the printed
formula is known to disagree with the derived one.  ``#`` starts a
comment.

Printed formulas use juxtaposition for products, ``^n`` for powers,
``(r + c)^(K)`` for falling factorials and either bracket kind for
grouping.  In non-central records a bare ``r`` is the order-1 falling
factorial.
"""

from __future__ import annotations

import re
from collections import defaultdict
from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Literal

from .errors import CorpusFormatError, NotInCorpus
from .multiindex import as_multiindex
from .symbolic import (
    MomentPolynomial,
    RPolynomial,
    derive_central_poly,
    derive_noncentral_poly,
)

__all__ = [
    "FORMAT_VERSION",
    "GoldenRecord",
    "TermDifference",
    "ComparisonReport",
    "parse_printed",
    "load_corpus",
    "dump_corpus",
    "compare_golden",
]

FORMAT_VERSION = 1
Kind = Literal["noncentral", "central"]
Key = tuple[int, tuple[int, ...]]

# -- printed-formula parser -------------------------------------------------
#
# Intermediate polynomials map (r_exp, ff_order, y_exponents) -> int, where
# ff_order > 0 marks a factor (r + ff_order - 1)^(ff_order).

_TOKEN = re.compile(r"\s*(?:(\d+)|(r)|y(\d+)|(\^\(|[-+*^()\[\]]))")
_Mono = tuple[int, int, tuple[int, ...]]


def _tokenize(text: str) -> list[str]:
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise CorpusFormatError(f"unexpected input at {text[pos:pos + 12]!r}")
        num, r, y, op = m.groups()
        out.append(num if num is not None else "r" if r else f"y{y}" if y else op)
        pos = m.end()
    return out


def _pad(e: tuple[int, ...], n: int) -> tuple[int, ...]:
    return e + (0,) * (n - len(e))


def _pmul(a: dict[_Mono, int], b: dict[_Mono, int]) -> dict[_Mono, int]:
    out: dict[_Mono, int] = defaultdict(int)
    for (ra, fa, ea), ca in a.items():
        for (rb, fb, eb), cb in b.items():
            if fa and fb:
                raise CorpusFormatError("product of two falling factorials")
            n = max(len(ea), len(eb))
            e = tuple(x + y for x, y in zip(_pad(ea, n), _pad(eb, n)))
            out[(ra + rb, fa or fb, e)] += ca * cb
    return {k: c for k, c in out.items() if c}


def _padd(a: dict[_Mono, int], b: dict[_Mono, int], sign: int = 1) -> dict[_Mono, int]:
    out: dict[_Mono, int] = defaultdict(int)
    for src, s in ((a, 1), (b, sign)):
        for (ra, fa, ea), c in src.items():
            out[(ra, fa, ea)] += s * c
    return {k: c for k, c in out.items() if c}


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> str | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expected: str | None = None) -> str:
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise CorpusFormatError(f"expected {expected or 'token'}, got {tok!r}")
        self.i += 1
        return tok

    def parse(self) -> dict[_Mono, int]:
        out = self.expr()
        if self.peek() is not None:
            raise CorpusFormatError(f"trailing input at {self.peek()!r}")
        return out

    def expr(self) -> dict[_Mono, int]:
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.take() == "-" else 1
        out = _padd({}, self.product(), sign)
        while self.peek() in ("+", "-"):
            sign = -1 if self.take() == "-" else 1
            out = _padd(out, self.product(), sign)
        return out

    def product(self) -> dict[_Mono, int]:
        out = self.factor()
        while self.peek() not in (None, "+", "-", ")", "]"):
            if self.peek() == "*":
                self.take()
            out = _pmul(out, self.factor())
        return out

    def factor(self) -> dict[_Mono, int]:
        tok = self.take()
        if tok.isdigit():
            base = {(0, 0, ()): int(tok)}
        elif tok == "r":
            base = {(1, 0, ()): 1}
        elif tok.startswith("y"):
            j = int(tok[1:])
            if j < 1:
                raise CorpusFormatError("y indices start at 1")
            base = {(0, 0, (0,) * (j - 1) + (1,)): 1}
        elif tok in ("(", "["):
            inner = self.expr()
            self.take(")" if tok == "(" else "]")
            if self.peek() == "^(":
                self.take()
                K = int(self.take())
                self.take(")")
                return self._falling(inner, K)
            base = inner
        else:
            raise CorpusFormatError(f"unexpected token {tok!r}")
        if self.peek() == "^":
            self.take()
            n = int(self.take())
            out = {(0, 0, ()): 1}
            for _ in range(n):
                out = _pmul(out, base)
            return out
        return base

    @staticmethod
    def _falling(inner: dict[_Mono, int], K: int) -> dict[_Mono, int]:
        if inner != {(1, 0, ()): 1, (0, 0, ()): K - 1} and not (K == 1 and inner == {(1, 0, ()): 1}):
            raise CorpusFormatError(f"falling factorial of order {K} must be (r + {K - 1})^({K})")
        return {(0, K, ()): 1}


def parse_printed(text: str, kind: Kind, d: int) -> MomentPolynomial | RPolynomial:
    """Canonicalize a printed formula.

    ``d`` is a minimum dimension; it grows to the largest ``y`` index that
    occurs.
    """
    raw = _Parser(text).parse()
    dim = max([d] + [len(e) for (_, _, e) in raw])
    terms: dict[Key, int] = defaultdict(int)
    for (ra, fa, e), c in raw.items():
        e = _pad(e, dim)
        if kind == "noncentral":
            if fa and ra:
                raise CorpusFormatError("r multiplies a falling factorial")
            if ra > 1:
                raise CorpusFormatError("bare r^n in a non-central formula")
            terms[(fa or ra, e)] += c
        else:
            if fa:
                raise CorpusFormatError("falling factorial in a central formula")
            terms[(ra, e)] += c
    cls = MomentPolynomial if kind == "noncentral" else RPolynomial
    return cls(terms, dim)


# -- corpus file ------------------------------------------------------------


@dataclass
class GoldenRecord:
    kind: Kind
    pattern: tuple[int, ...]
    printed: str
    poly: MomentPolynomial | RPolynomial
    misprints: frozenset[Key] = frozenset()
    notes: list[str] = field(default_factory=list)

    @property
    def order(self) -> int:
        return sum(self.pattern)


def _parse_key(text: str) -> Key:
    deg, _, e = text.partition(":")
    return int(deg), tuple(int(v) for v in e.split(","))


def _format_key(key: Key) -> str:
    return f"{key[0]}:{','.join(map(str, key[1]))}"


def _read(lines: Iterator[str], source: str, check: bool) -> list[GoldenRecord]:
    records: list[GoldenRecord] = []
    version = None
    cur: dict | None = None
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        where = f"{source}:{lineno}"
        if head == "format":
            name, _, ver = rest.partition(" ")
            if name != "negmultinom-golden":
                raise CorpusFormatError(f"{where}: unknown format {name!r}")
            version = int(ver)
            if version != FORMAT_VERSION:
                raise CorpusFormatError(f"{where}: unsupported version {version}")
            continue
        if version is None:
            raise CorpusFormatError(f"{where}: missing format line")
        if head == "record":
            if cur is not None:
                raise CorpusFormatError(f"{where}: record not closed")
            kind, _, pat = rest.partition(" ")
            if kind not in ("noncentral", "central"):
                raise CorpusFormatError(f"{where}: bad kind {kind!r}")
            cur = dict(kind=kind, pattern=as_multiindex([int(v) for v in pat.split(",")]),
                       printed=None, terms=[], misprints=set(), notes=[])
        elif cur is None:
            raise CorpusFormatError(f"{where}: {head!r} outside a record")
        elif head == "printed":
            cur["printed"] = rest
        elif head == "term":
            deg, e, c = rest.split()
            cur["terms"].append(((int(deg), tuple(int(v) for v in e.split(","))), int(c)))
        elif head == "misprint":
            cur["misprints"].add(_parse_key(rest))
        elif head == "note":
            cur["notes"].append(rest)
        elif head == "end":
            dims = {len(e) for (_, e), _ in cur["terms"]}
            if len(dims) != 1:
                raise CorpusFormatError(f"{where}: inconsistent exponent lengths")
            d = dims.pop()
            cls = MomentPolynomial if cur["kind"] == "noncentral" else RPolynomial
            poly = cls(cur["terms"], d)
            if check and cur["printed"] is not None:
                reparsed = parse_printed(cur["printed"], cur["kind"], len(cur["pattern"]))
                if reparsed.padded(max(d, reparsed.d)) != poly.padded(max(d, reparsed.d)):
                    raise CorpusFormatError(f"{where}: terms disagree with printed formula")
            records.append(GoldenRecord(cur["kind"], cur["pattern"], cur["printed"] or "",
                                        poly, frozenset(cur["misprints"]), cur["notes"]))
            cur = None
        else:
            raise CorpusFormatError(f"{where}: unknown directive {head!r}")
    if cur is not None:
        raise CorpusFormatError(f"{source}: unterminated record")
    return records


_DEFAULT: dict[tuple[Kind, tuple[int, ...]], GoldenRecord] | None = None


def load_corpus(path: str | Path | None = None, check: bool = True) -> dict[tuple[Kind, tuple[int, ...]], GoldenRecord]:
    """Load records keyed by ``(kind, pattern)``; the bundled corpus by default."""
    global _DEFAULT
    if path is None:
        if _DEFAULT is None:
            text = resources.files("negmultinom").joinpath("data/golden_moments.txt").read_text()
            _DEFAULT = _index(_read(iter(text.splitlines()), "golden_moments.txt", check))
        return _DEFAULT
    with open(path) as fh:
        return _index(_read(fh, str(path), check))


def _index(records: list[GoldenRecord]) -> dict:
    out = {}
    for rec in records:
        key = (rec.kind, rec.pattern)
        if key in out:
            raise CorpusFormatError(f"duplicate record {key}")
        out[key] = rec
    return out


def dump_corpus(records: Sequence[GoldenRecord]) -> str:
    lines = [
        "# Published negative multinomial moment formulas, transcribed.",
        "# Regenerate term lines with: python -m negmultinom.corpus FILE",
        f"format negmultinom-golden {FORMAT_VERSION}",
        "",
    ]
    for rec in records:
        lines.append(f"record {rec.kind} {','.join(map(str, rec.pattern))}")
        lines.append(f"printed {rec.printed}")
        for (deg, e), c in rec.poly.items():
            lines.append(f"term {deg} {','.join(map(str, e))} {c}")
        for key in sorted(rec.misprints):
            lines.append(f"misprint {_format_key(key)}")
        for note in rec.notes:
            lines.append(f"note {note}")
        lines.append("end")
        lines.append("")
    return "\n".join(lines)


# -- comparison -------------------------------------------------------------


@dataclass(frozen=True)
class TermDifference:
    key: Key
    derived: int
    printed: int


@dataclass
class ComparisonReport:
    """Term-by-term comparison of a derived polynomial with a corpus record.

    ``mismatches`` groups raw differences that share either their degree
    or their ``y`` exponents: one wrong symbol in a printed formula moves a
    term along one of these axes and shows up as a single group.
    """

    p: tuple[int, ...]
    kind: Kind
    pattern: tuple[int, ...]
    matched: int
    differences: list[TermDifference]
    mismatches: list[list[TermDifference]]
    annotated: frozenset[Key]
    notes: list[str]

    @property
    def clean(self) -> bool:
        return not self.differences

    @property
    def explained(self) -> bool:
        """Every difference is an annotated misprint and vice versa."""
        return {d.key for d in self.differences} == set(self.annotated)

    def lines(self) -> list[str]:
        out = [
            f"{self.kind} p={list(self.p)} record={list(self.pattern)}: "
            f"{self.matched} matching terms, {len(self.mismatches)} mismatch(es)"
        ]
        for group in self.mismatches:
            for diff in group:
                tag = " (annotated misprint)" if diff.key in self.annotated else ""
                out.append(
                    f"  {_format_key(diff.key)} derived={diff.derived} printed={diff.printed}{tag}"
                )
        return out


def _record_mapping(p: tuple[int, ...]) -> tuple[tuple[int, ...], list[int]]:
    coords = sorted((i for i, v in enumerate(p) if v), key=lambda i: -p[i])
    return tuple(p[i] for i in coords), coords


def _map_poly(poly, coords: list[int], d: int):
    """Send record variable ``j`` to coordinate ``coords[j]``; indices past
    ``coords`` go to fresh coordinates ``d, d + 1, ...``."""
    extra = max(0, poly.d - len(coords))
    target = list(coords) + list(range(d, d + extra))
    D = d + extra
    cls = type(poly)
    terms = []
    for (deg, e), c in poly.items():
        new = [0] * D
        for j, ej in enumerate(e):
            new[target[j]] += ej
        terms.append(((deg, tuple(new)), c))
    return cls(terms, D), target


def _map_key(key: Key, target: list[int], D: int) -> Key:
    new = [0] * D
    for j, ej in enumerate(key[1]):
        new[target[j]] += ej
    return key[0], tuple(new)


def _clusters(diffs: list[TermDifference]) -> list[list[TermDifference]]:
    parent = list(range(len(diffs)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(diffs)):
        for j in range(i):
            a, b = diffs[i].key, diffs[j].key
            if a[0] == b[0] or a[1] == b[1]:
                parent[find(i)] = find(j)
    groups: dict[int, list[TermDifference]] = defaultdict(list)
    for i, diff in enumerate(diffs):
        groups[find(i)].append(diff)
    return sorted(groups.values(), key=lambda g: g[0].key)


def golden_record(p: Sequence[int], kind: Kind, corpus=None) -> tuple[GoldenRecord, list[int]]:
    p = as_multiindex(p, "p")
    pattern, coords = _record_mapping(p)
    corpus = load_corpus() if corpus is None else corpus
    rec = corpus.get((kind, pattern))
    if rec is None:
        raise NotInCorpus(f"no {kind} record for index pattern {list(pattern)}")
    return rec, coords


def printed_poly(p: Sequence[int], kind: Kind, corpus=None):
    """The corpus formula for ``p`` expressed in ``p``'s coordinates.

    May have more variables than ``p`` when the printed formula mentions
    out-of-range indices.
    """
    p = as_multiindex(p, "p")
    rec, coords = golden_record(p, kind, corpus)
    poly, _ = _map_poly(rec.poly, coords, len(p))
    return poly


def compare_golden(p: Sequence[int], kind: Kind, corpus=None) -> ComparisonReport:
    """Compare the derived formula for ``p`` with its corpus record.

    Differences are reported, never corrected.  Raises ``NotInCorpus``
    when no record covers the index pattern of ``p``.
    """
    p = as_multiindex(p, "p")
    rec, coords = golden_record(p, kind, corpus)
    printed, target = _map_poly(rec.poly, coords, len(p))
    D = printed.d
    derived = (derive_noncentral_poly(p) if kind == "noncentral" else derive_central_poly(p)).padded(D)
    a, b = derived.terms, printed.terms
    diffs, matched = [], 0
    for key in sorted(set(a) | set(b)):
        if a.get(key, 0) == b.get(key, 0):
            matched += 1
        else:
            diffs.append(TermDifference(key, a.get(key, 0), b.get(key, 0)))
    annotated = frozenset(_map_key(k, target, D) for k in rec.misprints)
    return ComparisonReport(p, kind, rec.pattern, matched, diffs, _clusters(diffs), annotated, list(rec.notes))


def _regenerate(path: str) -> None:
    """Rewrite ``term`` lines from ``printed`` lines, keeping annotations."""
    with open(path) as fh:
        records = _read(fh, path, check=False)
    for rec in records:
        rec.poly = parse_printed(rec.printed, rec.kind, len(rec.pattern))
    Path(path).write_text(dump_corpus(records))


if __name__ == "__main__":
    import sys

    _regenerate(sys.argv[1])
