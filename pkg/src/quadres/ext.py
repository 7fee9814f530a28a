"""Cohomology of the dualized resolution and the local certificate for it.

After applying Hom(-, R) a level-``i`` generator sits in internal degree
``-i``, so the cochain module at position ``i`` in degree ``u`` is spanned by
``m * v*`` with ``v`` at level ``i`` and ``deg m = u + i``.

The certificate looks, in the primal diagram, for a vertex ``c0`` with two
parents ``b0 -s-> c0`` and ``b1 -t-> c0`` (``s != t``), both of which have no
other outgoing edge, such that every edge arriving at ``b0`` carries a label
``l`` with ``x_l x_s`` in I.  Then ``x_s * b0*`` is a cocycle that is not a
coboundary, in cochain position ``level(b0)`` and internal degree
``1 - level(b0)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .complex import DUAL, FreeComplex, dualize, from_diagram
from .diagram import Diagram, build
from .fields import DEFAULT_PRIME, Field, PrimeField
from .homology import level_dim, piece_rank
from .ring import RingSpec


class DetectorSoundnessError(AssertionError):
    """A detected configuration did not produce a nonzero cohomology class."""

    def __init__(self, occurrence, dim):
        self.occurrence = occurrence
        self.dim = dim
        super().__init__(
            f"occurrence {occurrence} predicts a class at position {occurrence.position}, "
            f"degree {occurrence.degree}, but the cohomology there has dimension {dim}"
        )


def cohomology_dims(dual: FreeComplex, i: int, u: int, field: Field) -> int:
    """dim H^i of the cochain complex in internal degree ``u``."""
    if dual.orientation != DUAL:
        raise ValueError("expected a dualized complex")
    if not 0 <= i <= dual.length - 1:
        raise ValueError(f"position {i} is not assessable in a complex of length {dual.length}")
    # d*_i arrives at position i, d*_{i+1} leaves it
    return level_dim(dual, i, u) - piece_rank(dual, i + 1, u, field) - piece_rank(dual, i, u, field)


@dataclass(frozen=True)
class VVOccurrence:
    position: int
    c0: int
    b0: int
    b1: int
    s: int
    t: int
    incoming_labels: tuple[int, ...]

    @property
    def degree(self) -> int:
        """Internal degree of the witness ``x_s * b0*``."""
        return 1 - self.position

    def to_json(self) -> dict:
        return {"position": self.position, "c0": self.c0, "b0": self.b0, "b1": self.b1, "s": self.s, "t": self.t}


def find_vv_patterns(diagram: Diagram) -> list[VVOccurrence]:
    """Every certificate configuration whose cocycle condition can be checked.

    ``b0`` must sit strictly below the top level, otherwise the edges
    arriving at it are not yet built.
    """
    spec = diagram.spec
    top = diagram.top_level
    level_of = diagram.level_of
    out = []
    for c0 in sorted(diagram.in_edges):
        parents = [
            e for e in diagram.in_edges[c0] if len(diagram.out_edges.get(e.source, ())) == 1
        ]
        for e0 in parents:
            b0 = e0.source
            pos = level_of[b0]
            if pos >= top:
                continue
            labels = tuple(sorted(e.label for e in diagram.in_edges.get(b0, ())))
            if not all(spec.in_ideal(l, e0.label) for l in labels):
                continue
            for e1 in parents:
                if e1.source == b0 or e1.label == e0.label:
                    continue
                out.append(VVOccurrence(pos, c0, b0, e1.source, e0.label, e1.label, labels))
    out.sort(key=lambda o: (o.position, o.c0, o.b0, o.b1))
    return out


@dataclass
class EvidenceReport:
    spec: RingSpec
    initial: int
    levels: int
    field: str
    window: int
    dims: dict[int, dict[int, int]]
    vv_occurrences: list[VVOccurrence] = field(default_factory=list)

    @property
    def nonzero_ext_positions(self) -> list[int]:
        return sorted(i for i, row in self.dims.items() if any(row.values()))

    @property
    def vv_positions(self) -> list[int]:
        return sorted({o.position for o in self.vv_occurrences})

    def summary(self) -> str:
        return (
            f"nonzero Ext at positions {self.nonzero_ext_positions} (observed for i <= {self.levels - 1}); "
            f"vv configurations at positions {self.vv_positions}"
        )

    def to_json(self) -> dict:
        return {
            "spec": self.spec.to_json(),
            "initial": self.initial,
            "levels": self.levels,
            "field": self.field,
            "nonzero_ext_positions": self.nonzero_ext_positions,
            "vv_occurrences": [o.to_json() for o in self.vv_occurrences],
            "cohomology": [
                {"position": i, "degree": u, "dim": d}
                for i in sorted(self.dims)
                for u, d in sorted(self.dims[i].items())
            ],
        }

    def to_tsv(self) -> str:
        lines = ["position\tdegree\tdim"]
        for i in sorted(self.dims):
            for u, d in sorted(self.dims[i].items()):
                lines.append(f"{i}\t{u}\t{d}")
        return "\n".join(lines) + "\n"


def cohomology_table(dual: FreeComplex, positions, window: int, field: Field) -> dict[int, dict[int, int]]:
    """dims[i][u] for ``u`` from ``-i`` (lowest nonzero degree) through ``-i + window``."""
    return {
        i: {u: cohomology_dims(dual, i, u, field) for u in range(-i, -i + window + 1)}
        for i in positions
    }


def injective_dimension_evidence(spec: RingSpec, initial: int, levels: int, field: Field | None = None, window: int | None = None) -> EvidenceReport:
    """Build, dualize, tabulate cohomology, and cross-check the detector.

    Raises :class:`DetectorSoundnessError` if some configuration fails to
    yield a nonzero class at its predicted position and degree.
    """
    field = field or PrimeField(DEFAULT_PRIME)
    window = levels + 4 if window is None else window
    diagram = build(spec, initial, levels)
    dual = dualize(from_diagram(diagram))
    dims = cohomology_table(dual, range(1, levels), window, field)
    occurrences = find_vv_patterns(diagram)
    for occ in occurrences:
        if occ.position < 1:
            continue
        d = dims.get(occ.position, {}).get(occ.degree)
        if d is None:
            d = cohomology_dims(dual, occ.position, occ.degree, field)
        if d < 1:
            raise DetectorSoundnessError(occ, d)
    return EvidenceReport(spec, initial, levels, field.name, window, dims, occurrences)
