"""Graded homology of linear complexes by exact rank computations.

Every differential entry is a signed variable, so each differential splits
into finite-dimensional pieces, one per internal degree ``t``.  A generator
at level ``k`` sits in internal degree ``gen_degrees[k]``; in degree ``t`` it
contributes one basis vector per admissible monomial of degree
``t - gen_degrees[k]``.
"""

from __future__ import annotations

import itertools
import json
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

from .complex import Entry, FreeComplex, PRIMAL
from .fields import DEFAULT_PRIME, Field, PrimeField, parse_field
from .linalg import rank as dense_rank
from .linalg import sparse_rank
from .ring import Monomial, RingSpec, enumerate_basis, normalize_spec, times_variable

log = logging.getLogger(__name__)


@dataclass
class GradedPiece:
    """Differential ``n`` restricted to internal degree ``t``.

    ``columns[c]`` is the image of ``domain[c]`` as a sparse integer vector
    over ``codomain``.
    """

    position: int
    degree: int
    domain: list[tuple[int, Monomial]]
    codomain: list[tuple[int, Monomial]]
    columns: list[dict[int, int]]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.codomain), len(self.domain)

    def dense(self) -> list[list[int]]:
        rows, cols = self.shape
        out = [[0] * cols for _ in range(rows)]
        for c, vec in enumerate(self.columns):
            for r, v in vec.items():
                out[r][c] = v
        return out

    def rank(self, field: Field) -> int:
        return sparse_rank(self.columns, field)


def level_basis(cx: FreeComplex, level: int, t: int) -> list[tuple[int, Monomial]]:
    d = t - cx.gen_degrees[level]
    monos = enumerate_basis(cx.spec, d)
    return [(g, m) for g in range(cx.ranks[level]) for m in monos]


def level_dim(cx: FreeComplex, level: int, t: int) -> int:
    if not 0 <= level < len(cx.ranks):
        return 0
    return cx.ranks[level] * len(enumerate_basis(cx.spec, t - cx.gen_degrees[level]))


def graded_piece(cx: FreeComplex, n: int, t: int, field: Field | None = None) -> GradedPiece:
    """Piece of differential ``n`` in internal degree ``t``.

    ``field`` is accepted for interface symmetry; entries are kept as
    integers in ``{-1, 0, 1}`` (before accumulation) and embedded into a
    field only when a rank is taken.
    """
    src, tgt = cx.source_level(n), cx.target_level(n)
    domain = level_basis(cx, src, t)
    codomain = level_basis(cx, tgt, t)
    index = {b: k for k, b in enumerate(codomain)}
    by_col: dict[int, list[Entry]] = {}
    for e in cx.differentials[n - 1]:
        by_col.setdefault(e.col, []).append(e)
    spec = cx.spec
    columns = []
    for g, m in domain:
        vec: dict[int, int] = {}
        for e in by_col.get(g, ()):
            img = times_variable(spec, e.label, m)
            if img is None:
                continue
            r = index[(e.row, img)]
            v = vec.get(r, 0) + e.sign
            if v:
                vec[r] = v
            else:
                vec.pop(r)
        columns.append(vec)
    return GradedPiece(n, t, domain, codomain, columns)


def piece_rank(cx: FreeComplex, n: int, t: int, field: Field) -> int:
    if n < 1 or n > cx.length:
        return 0
    if level_dim(cx, cx.source_level(n), t) == 0 or level_dim(cx, cx.target_level(n), t) == 0:
        return 0
    return graded_piece(cx, n, t).rank(field)


def rank(matrix, field: Field) -> int:
    """Exact rank of a dense matrix (list of rows) over ``field``."""
    return dense_rank(matrix, field)


def homology_dims(cx: FreeComplex, n: int, t: int, field: Field) -> int:
    """dim H_n in internal degree t of a primal complex.

    Position 0 is the cokernel of ``d_1``.  Positions need ``d_{n+1}``, so
    ``n`` must be at most ``length - 1``.
    """
    if cx.orientation != PRIMAL:
        raise ValueError("homology_dims expects a primal complex; use ext.cohomology_dims")
    if not 0 <= n <= cx.length - 1:
        raise ValueError(f"position {n} is not assessable in a complex of length {cx.length}")
    return level_dim(cx, n, t) - piece_rank(cx, n, t, field) - piece_rank(cx, n + 1, t, field)


@dataclass(frozen=True)
class HomologyRow:
    n: int
    t: int
    dim_domain: int
    rank_dn: int
    rank_dn1: int
    homology_dim: int


@dataclass
class ExactnessReport:
    levels: int
    max_degree: int
    field: str
    rows: list[HomologyRow]
    top_cycles: dict[int, int] = field(default_factory=dict)
    note: str = ""

    @property
    def table(self) -> dict[tuple[int, int], int]:
        return {(r.n, r.t): r.homology_dim for r in self.rows}

    def nonzero(self, min_position: int = 1) -> list[HomologyRow]:
        return [r for r in self.rows if r.n >= min_position and r.homology_dim]

    @property
    def consistent(self) -> bool:
        """True iff H_n(t) = 0 for every assessed position n >= 1."""
        return not self.nonzero()

    @property
    def verdict(self) -> str:
        return "consistent with conjecture" if self.consistent else "NOT exact"

    def h0(self) -> list[int]:
        return [r.homology_dim for r in self.rows if r.n == 0]

    def to_tsv(self) -> str:
        lines = ["n\tt\tdim_domain\trank_dn\trank_dn1\thomology_dim"]
        for r in self.rows:
            lines.append(f"{r.n}\t{r.t}\t{r.dim_domain}\t{r.rank_dn}\t{r.rank_dn1}\t{r.homology_dim}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "levels": self.levels,
            "max_degree": self.max_degree,
            "field": self.field,
            "verdict": self.verdict,
            "note": self.note,
            "rows": [asdict(r) for r in self.rows],
            "top_cycles": {str(t): v for t, v in sorted(self.top_cycles.items())},
        }


def exactness_report(cx: FreeComplex, max_degree: int | None = None, field: Field | None = None) -> ExactnessReport:
    """Homology table for positions ``0..L-1`` and degrees ``0..T``.

    Position ``L`` is never called exact: without ``d_{L+1}`` only its
    cycles can be measured, and those are recorded in ``top_cycles``.
    """
    L = cx.length
    if L < 2:
        raise ValueError("need at least two differentials")
    T = L + 4 if max_degree is None else max_degree
    field = field or PrimeField(DEFAULT_PRIME)
    ranks = {(n, t): piece_rank(cx, n, t, field) for n in range(1, L + 1) for t in range(T + 1)}
    rows = []
    for n in range(L):
        for t in range(T + 1):
            dim = level_dim(cx, n, t)
            r_n = ranks[(n, t)] if n >= 1 else 0
            r_n1 = ranks[(n + 1, t)]
            rows.append(HomologyRow(n, t, dim, r_n, r_n1, dim - r_n - r_n1))
    top = {t: level_dim(cx, L, t) - ranks[(L, t)] for t in range(T + 1)}
    note = f"position {L} not assessable (needs d_{L + 1}); top_cycles lists dim ker d_{L}"
    return ExactnessReport(L, T, field.name, rows, top, note)


def initial_label(cx: FreeComplex) -> int:
    d1 = cx.differentials[0]
    if cx.ranks[0] != 1 or cx.ranks[1] != 1 or len(d1) != 1:
        raise ValueError("complex does not start with a single multiplication map")
    return d1[0].label


def quotient_dims(spec: RingSpec, i: int, max_degree: int) -> list[int]:
    """dim (R/(x_i))_t by counting admissible monomials free of x_i."""
    return [
        sum(1 for m in enumerate_basis(spec, t) if m[i - 1] == 0)
        for t in range(max_degree + 1)
    ]


def h0_dims(cx: FreeComplex, max_degree: int, field: Field | None = None) -> list[int]:
    field = field or PrimeField(DEFAULT_PRIME)
    return [
        level_dim(cx, 0, t) - piece_rank(cx, 1, t, field) for t in range(max_degree + 1)
    ]


def h0_check(cx: FreeComplex, max_degree: int, field: Field | None = None) -> bool:
    """H_0 agrees degree-wise with R/(x_i), i the label of ``d_1``."""
    i = initial_label(cx)
    return h0_dims(cx, max_degree, field) == quotient_dims(cx.spec, i, max_degree)


def map_kernel_dim(spec: RingSpec, labels, t: int, field: Field) -> int:
    """dim of the kernel, in target degree ``t``, of ``R^k -> R``, ``(r_a) -> sum x_a r_a``."""
    labels = list(labels)
    entries = tuple(Entry(0, c, 1, l) for c, l in enumerate(labels))
    cx = FreeComplex(spec, (1, len(labels)), (entries,))
    return level_dim(cx, 1, t) - piece_rank(cx, 1, t, field)


def kernel_splitting_holds(spec: RingSpec, i: int, j: int, t: int, field: Field) -> bool:
    return map_kernel_dim(spec, (i, j), t, field) == (
        map_kernel_dim(spec, (i,), t, field) + map_kernel_dim(spec, (j,), t, field)
    )


# -- conjecture hunt ---------------------------------------------------------


@dataclass
class CaseResult:
    spec: RingSpec
    initial: int
    status: str  # "ok", "nonexact", "sign-conflict", "dd-failure"
    ranks: list[int]
    anomalies: list[tuple[int, int, int]]
    detail: str = ""

    def to_json(self) -> dict:
        return {
            "spec": self.spec.to_json(),
            "initial": self.initial,
            "status": self.status,
            "ranks": self.ranks,
            "anomalies": [{"n": n, "t": t, "homology_dim": h} for n, t, h in self.anomalies],
            "detail": self.detail,
        }


def enumerate_cases(max_vars: int):
    """Every nonempty generator set on ``n <= max_vars`` variables, every valid initial label."""
    for n in range(1, max_vars + 1):
        pairs = [(i, j) for i in range(1, n + 1) for j in range(i, n + 1)]
        for size in range(1, len(pairs) + 1):
            for gens in itertools.combinations(pairs, size):
                spec = normalize_spec(gens, n)
                for i in spec.variables_in_generators():
                    yield spec, i


def check_case(spec: RingSpec, initial: int, levels: int, max_degree: int, field: Field) -> CaseResult:
    from .complex import from_diagram
    from .diagram import InternalConsistencyError, SignConflictError, build

    try:
        diagram = build(spec, initial, levels)
    except SignConflictError as exc:
        return CaseResult(spec, initial, "sign-conflict", [], [], str(exc))
    except InternalConsistencyError as exc:
        return CaseResult(spec, initial, "dd-failure", [], [], str(exc))
    cx = from_diagram(diagram)
    report = exactness_report(cx, max_degree, field)
    bad = [(r.n, r.t, r.homology_dim) for r in report.nonzero()]
    return CaseResult(spec, initial, "nonexact" if bad else "ok", diagram.ranks, bad)


def _check_case_star(args):
    spec, initial, levels, max_degree, field_name = args
    return check_case(spec, initial, levels, max_degree, parse_field(field_name))


def worker_count(default: int = 1) -> int:
    raw = os.environ.get("QUADRES_THREADS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            log.warning("ignoring non-integer QUADRES_THREADS=%r", raw)
    return default


def conjecture_hunt(max_vars: int = 4, levels: int = 6, max_degree: int = 8, field: Field | None = None, workers: int | None = None, bound: int = 4):
    """Yield a :class:`CaseResult` per (ring, initial label), in enumeration order."""
    if max_vars > bound:
        raise ValueError(f"max_vars={max_vars} exceeds the configured bound {bound}")
    field = field or PrimeField(DEFAULT_PRIME)
    workers = workers or worker_count()
    jobs = ((spec, i, levels, max_degree, field.name) for spec, i in enumerate_cases(max_vars))
    if workers == 1:
        yield from map(_check_case_star, jobs)
        return
    with ProcessPoolExecutor(max_workers=workers) as pool:
        yield from pool.map(_check_case_star, jobs, chunksize=8)


@dataclass
class HuntSummary:
    cases: int = 0
    anomalies: list[CaseResult] = field(default_factory=list)

    def add(self, result: CaseResult) -> None:
        self.cases += 1
        if result.status != "ok":
            self.anomalies.append(result)

    @property
    def verified(self) -> int:
        return self.cases - len(self.anomalies)

    def line(self) -> str:
        return f"{len(self.anomalies)} anomalies, {self.verified} cases verified"

    def to_json(self) -> str:
        return json.dumps(
            {
                "cases": self.cases,
                "verified": self.verified,
                "anomalies": [a.to_json() for a in self.anomalies],
            },
            indent=2,
        )
