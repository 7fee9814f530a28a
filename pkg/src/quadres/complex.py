"""Chain complexes of free R-modules with linear differentials.

Every differential entry is a signed single variable, so a matrix is stored
as a list of ``Entry(row, col, sign, label)`` triples.  For the primal
(degree-lowering) orientation ``differentials[n - 1]`` is ``d_n`` from level
``n`` to level ``n - 1``: rows index level ``n - 1``, columns level ``n``.
The dual complex keeps the same indexing with rows and columns swapped,
so ``differentials[n - 1]`` maps level ``n - 1`` up to level ``n``.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

from .fields import QQ
from .ring import Monomial, RingElement, RingSpec

PRIMAL = "primal"
DUAL = "dual"


@dataclass(frozen=True, order=True)
class Entry:
    row: int
    col: int
    sign: int
    label: int


@dataclass(frozen=True)
class FreeComplex:
    spec: RingSpec
    ranks: tuple[int, ...]
    differentials: tuple[tuple[Entry, ...], ...]
    orientation: str = PRIMAL
    gen_degrees: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if self.orientation not in (PRIMAL, DUAL):
            raise ValueError(f"unknown orientation {self.orientation!r}")
        if len(self.differentials) != len(self.ranks) - 1:
            raise ValueError("need exactly one differential between consecutive levels")
        if not self.gen_degrees:
            step = 1 if self.orientation == PRIMAL else -1
            object.__setattr__(
                self, "gen_degrees", tuple(step * k for k in range(len(self.ranks)))
            )
        for n, entries in enumerate(self.differentials, start=1):
            rows, cols = self.shape(n)
            for e in entries:
                if not (0 <= e.row < rows and 0 <= e.col < cols):
                    raise ValueError(f"entry {e} outside the {rows}x{cols} matrix d_{n}")
                if e.sign not in (1, -1) or not 1 <= e.label <= self.spec.num_vars:
                    raise ValueError(f"entry {e} is not a signed variable")

    @property
    def length(self) -> int:
        return len(self.ranks) - 1

    def shape(self, n: int) -> tuple[int, int]:
        """(rows, cols) of differential ``n``."""
        if self.orientation == PRIMAL:
            return self.ranks[n - 1], self.ranks[n]
        return self.ranks[n], self.ranks[n - 1]

    def source_level(self, n: int) -> int:
        return n if self.orientation == PRIMAL else n - 1

    def target_level(self, n: int) -> int:
        return n - 1 if self.orientation == PRIMAL else n

    def matrix(self, n: int, field=QQ) -> list[list[RingElement]]:
        """Differential ``n`` as a dense matrix of ring elements."""
        rows, cols = self.shape(n)
        zero = RingElement.zero(self.spec, field)
        out = [[zero] * cols for _ in range(rows)]
        for e in self.differentials[n - 1]:
            out[e.row][e.col] = out[e.row][e.col] + RingElement(
                self.spec, {Monomial.var(self.spec.num_vars, e.label): e.sign}, field
            )
        return out

    def truncate(self, length: int) -> "FreeComplex":
        return FreeComplex(
            self.spec,
            self.ranks[: length + 1],
            self.differentials[:length],
            self.orientation,
            self.gen_degrees[: length + 1],
        )

    def to_json(self) -> dict:
        return {
            "spec": self.spec.to_json(),
            "ranks": list(self.ranks),
            "differentials": [
                [{"row": e.row, "col": e.col, "sign": e.sign, "label": e.label} for e in d]
                for d in self.differentials
            ],
            "orientation": self.orientation,
        }

    @classmethod
    def from_json(cls, data: dict) -> "FreeComplex":
        spec = RingSpec.from_json(data["spec"])
        diffs = tuple(
            tuple(Entry(e["row"], e["col"], e["sign"], e["label"]) for e in d)
            for d in data["differentials"]
        )
        return cls(spec, tuple(data["ranks"]), diffs, data.get("orientation", PRIMAL))


def from_diagram(diagram) -> FreeComplex:
    """Read the diagram back as a complex: one R per vertex, x_l per edge."""
    position = {}
    for ids in diagram.levels:
        for k, v in enumerate(ids):
            position[v] = k
    diffs = []
    for n in range(1, len(diagram.levels)):
        entries = sorted(
            Entry(position[e.target], position[e.source], e.sign, e.label)
            for e in diagram.edges_from_level(n)
        )
        diffs.append(tuple(entries))
    return FreeComplex(diagram.spec, tuple(diagram.ranks), tuple(diffs))


@dataclass(frozen=True)
class DDResult:
    """Outcome of a d o d = 0 check; falsy when a witness was found."""

    ok: bool
    n: int
    row: int | None = None
    col: int | None = None
    element: RingElement | None = None

    def __bool__(self):
        return self.ok


def composite_witness(spec: RingSpec, upper, lower):
    """First nonzero entry of ``lower o upper`` for edge-like lists.

    ``upper`` and ``lower`` hold objects with ``source``, ``target``,
    ``label`` and ``sign``; ``upper`` edges land where ``lower`` edges
    start.  Coefficients are accumulated over the integers, so the check is
    independent of any coefficient field.  Returns ``(target, source,
    RingElement)`` or ``None``.
    """
    lower_from = defaultdict(list)
    for e in lower:
        lower_from[e.source].append(e)
    acc: dict[tuple, int] = defaultdict(int)
    for up in upper:
        for low in lower_from.get(up.target, ()):
            a, b = sorted((up.label, low.label))
            if spec.in_ideal(a, b):
                continue
            acc[(low.target, up.source, a, b)] += up.sign * low.sign
    bad = sorted(k for k, c in acc.items() if c)
    if not bad:
        return None
    tgt, src = bad[0][0], bad[0][1]
    terms = {}
    n = spec.num_vars
    for (t, s, a, b), c in acc.items():
        if (t, s) == (tgt, src) and c:
            m = [0] * n
            m[a - 1] += 1
            m[b - 1] += 1
            terms[Monomial(m)] = c
    return tgt, src, RingElement(spec, terms, QQ)


@dataclass(frozen=True)
class _Arrow:
    source: int
    target: int
    label: int
    sign: int


def _arrows(cx: FreeComplex, n: int) -> list[_Arrow]:
    # columns are always the source side of the map
    return [_Arrow(e.col, e.row, e.label, e.sign) for e in cx.differentials[n - 1]]


def verify_dd_zero(cx: FreeComplex, n: int) -> DDResult:
    """Check that the two differentials meeting at level ``n - 1`` compose to 0.

    For the primal orientation this is ``d_{n-1} o d_n``; for the dual one
    it is ``d*_n o d*_{n-1}``.
    """
    if not 2 <= n <= cx.length:
        raise ValueError(f"need 2 <= n <= {cx.length}")
    if cx.orientation == PRIMAL:
        upper, lower = _arrows(cx, n), _arrows(cx, n - 1)
    else:
        upper, lower = _arrows(cx, n - 1), _arrows(cx, n)
    hit = composite_witness(cx.spec, upper, lower)
    if hit is None:
        return DDResult(True, n)
    row, col, elem = hit
    return DDResult(False, n, row, col, elem)


def verify_all(cx: FreeComplex) -> list[DDResult]:
    return [verify_dd_zero(cx, n) for n in range(2, cx.length + 1)]


def dualize(cx: FreeComplex) -> FreeComplex:
    """Apply Hom(-, R): transpose every matrix and negate generator degrees."""
    diffs = tuple(
        tuple(sorted(Entry(e.col, e.row, e.sign, e.label) for e in d)) for d in cx.differentials
    )
    orientation = DUAL if cx.orientation == PRIMAL else PRIMAL
    return FreeComplex(
        cx.spec, cx.ranks, diffs, orientation, tuple(-g for g in cx.gen_degrees)
    )
