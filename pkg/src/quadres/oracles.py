"""Closed-form resolutions of R/(x_1) for the three worked families.

These are assembled directly from block recursions, without running the
diagram construction, and serve as an independent reference for it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .complex import Entry, FreeComplex, verify_all
from .fields import Field
from .fixtures import all_quadrics_ring, o_family_ring, two_generator_ring
from .homology import exactness_report


@dataclass(frozen=True)
class OracleKind:
    name: str  # "fibonacci", "binary" or "ofamily"
    n: int | None = None

    def __post_init__(self):
        if self.name not in ("fibonacci", "binary", "ofamily"):
            raise ValueError(f"unknown oracle kind {self.name!r}")
        if self.name == "ofamily" and (self.n is None or self.n < 2):
            raise ValueError("the O(n) oracle needs n >= 2")

    def spec(self):
        if self.name == "fibonacci":
            return two_generator_ring()
        if self.name == "binary":
            return all_quadrics_ring()
        return o_family_ring(self.n)

    @classmethod
    def parse(cls, text: str) -> "OracleKind":
        text = text.strip().lower()
        if text.startswith("o:") or text.startswith("ofamily:"):
            return cls("ofamily", int(text.split(":", 1)[1]))
        return cls(text)


FIBONACCI = OracleKind("fibonacci")
BINARY = OracleKind("binary")


def OFamily(n: int) -> OracleKind:
    return OracleKind("ofamily", n)


# a matrix is (rows, cols, entries)
def _mat(rows, cols, cells):
    return rows, cols, tuple(Entry(r, c, s, l) for r, c, s, l in cells)


def block_diag(*blocks):
    rows = cols = 0
    entries = []
    for br, bc, be in blocks:
        entries.extend(Entry(e.row + rows, e.col + cols, e.sign, e.label) for e in be)
        rows += br
        cols += bc
    return rows, cols, tuple(entries)


def _fibonacci(L):
    d = {
        1: _mat(1, 1, [(0, 0, 1, 1)]),
        2: _mat(1, 2, [(0, 0, 1, 2), (0, 1, 1, 3)]),
        3: _mat(2, 3, [(0, 0, 1, 1), (0, 1, 1, 3), (1, 1, -1, 2), (1, 2, 1, 1)]),
    }
    for n in range(4, L + 1):
        d[n] = block_diag(d[n - 2], d[n - 3], d[n - 2])
    return [d[n] for n in range(1, L + 1)]


def _binary(L):
    d = {1: _mat(1, 1, [(0, 0, 1, 1)]), 2: _mat(1, 2, [(0, 0, 1, 1), (0, 1, 1, 2)])}
    for n in range(3, L + 1):
        d[n] = block_diag(d[n - 1], d[n - 1])
    return [d[n] for n in range(1, L + 1)]


def _ofamily(nvars, L):
    # the kernel of x_1 is generated by every variable, the kernel of x_i
    # (i >= 2) by every variable except x_i; each generator is reached by
    # exactly one label, so the complex is a tree
    def kernel_labels(label):
        if label == 1:
            return list(range(1, nvars + 1))
        return [j for j in range(1, nvars + 1) if j != label]

    out = [_mat(1, 1, [(0, 0, 1, 1)])]
    below = [1]  # label reaching each generator of the current top level
    for _ in range(2, L + 1):
        cells = []
        above = []
        for row, label in enumerate(below):
            for j in kernel_labels(label):
                cells.append((row, len(above), 1, j))
                above.append(j)
        out.append(_mat(len(below), len(above), cells))
        below = above
    return out


def oracle_complex(kind: OracleKind, L: int) -> FreeComplex:
    if L < 1:
        raise ValueError("L must be >= 1")
    if kind.name == "fibonacci":
        mats = _fibonacci(L)
    elif kind.name == "binary":
        mats = _binary(L)
    else:
        mats = _ofamily(kind.n, L)
    ranks = [mats[0][0]] + [m[1] for m in mats]
    diffs = tuple(tuple(sorted(m[2])) for m in mats)
    return FreeComplex(kind.spec(), tuple(ranks), diffs)


@dataclass
class Verdict:
    equal: bool
    reasons: list[str]

    def __bool__(self):
        return self.equal


def compare(procedure: FreeComplex, oracle: FreeComplex, max_degree: int, field: Field) -> Verdict:
    """Equal rank sequences and equal graded homology tables.

    Matrix identity is not required: generator order in the construction
    is an artifact of vertex numbering.  Both sides must be complexes,
    since rank differences only measure homology when d o d = 0.
    """
    reasons = []
    for side, cx in (("procedure", procedure), ("oracle", oracle)):
        bad = next((r for r in verify_all(cx) if not r), None)
        if bad is not None:
            reasons.append(f"{side} is not a complex: d o d != 0 at level {bad.n}")
    if procedure.spec != oracle.spec:
        reasons.append(f"different rings: {procedure.spec} vs {oracle.spec}")
    if procedure.ranks != oracle.ranks:
        for n, (a, b) in enumerate(zip(procedure.ranks, oracle.ranks)):
            if a != b:
                reasons.append(f"rank differs at level {n}: {a} vs {b}")
                break
        else:
            reasons.append(f"lengths differ: {procedure.length} vs {oracle.length}")
    if not reasons:
        ta = exactness_report(procedure, max_degree, field).table
        tb = exactness_report(oracle, max_degree, field).table
        for key in sorted(ta):
            if ta[key] != tb.get(key):
                reasons.append(f"H_{key[0]}({key[1]}) differs: {ta[key]} vs {tb.get(key)}")
    return Verdict(not reasons, reasons)
