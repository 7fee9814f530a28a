"""Level-by-level construction of the signed, labeled diagram.

A diagram is a layered directed graph: vertices sit at homological levels,
every edge drops exactly one level and carries a variable label and a sign.
Level 0 and level 1 hold one vertex each, joined by the initial edge.  Each
extension looks at the edges between the two top levels and adds

* a *column* above every top edge ``v -i-> w`` for each ``j`` with
  ``x_i x_j`` in I (one new edge ``u -j-> v``), and
* a *diamond* above every pair ``v1 -i-> w <-j- v2`` with ``i != j`` and
  ``x_i x_j`` not in I (one new vertex with edges ``-j-> v1`` and ``-i-> v2``
  whose signs make the square anticommute).

Prospective edges with the same (target, label) are identified, and the two
halves of a diamond always share their new vertex; the resulting classes
become the new vertices.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass
from functools import cached_property

from .ring import RingSpec


class DiagramError(Exception):
    pass


class InvalidInitialMapError(DiagramError, ValueError):
    """The chosen initial variable is not a factor of any generator."""


class SignConflictError(DiagramError):
    """The diamond parity constraints of one level admit no solution.

    ``cycle`` lists the new edges, as ``(target, label)`` keys, around an odd
    cycle of constraints.
    """

    def __init__(self, level: int, cycle: list[tuple[int, int]]):
        self.level = level
        self.cycle = cycle
        super().__init__(f"inconsistent diamond signs at level {level}: cycle {cycle}")


class InternalConsistencyError(DiagramError):
    """A freshly added level fails d o d = 0."""

    def __init__(self, level: int, witness):
        self.level = level
        self.witness = witness
        super().__init__(f"composite of levels {level}->{level - 2} is nonzero: {witness}")


# -- templates ---------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Column:
    """``u -top-> v -bottom-> w`` with ``x_top x_bottom`` in I, top != bottom."""

    top: int
    bottom: int


@dataclass(frozen=True, order=True)
class RepeatedColumn:
    label: int


@dataclass(frozen=True, order=True)
class Diamond:
    """Square over ``x_i x_j`` not in I; stored with ``i < j``."""

    i: int
    j: int


def build_template_set(spec: RingSpec) -> set:
    templates = set()
    for i, j in spec.generators:
        if i == j:
            templates.add(RepeatedColumn(i))
        else:
            templates.add(Column(j, i))
            templates.add(Column(i, j))
    n = spec.num_vars
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if not spec.in_ideal(i, j):
                templates.add(Diamond(i, j))
    return templates


# -- the diagram itself ------------------------------------------------------


@dataclass(frozen=True)
class Vertex:
    id: int
    level: int


@dataclass(frozen=True, order=True)
class Edge:
    source: int
    target: int
    label: int
    sign: int


@dataclass(frozen=True)
class Diagram:
    spec: RingSpec
    initial_label: int
    levels: tuple[tuple[int, ...], ...]
    edges: tuple[Edge, ...]

    @property
    def top_level(self) -> int:
        return len(self.levels) - 1

    @property
    def ranks(self) -> list[int]:
        return [len(ids) for ids in self.levels]

    @cached_property
    def level_of(self) -> dict[int, int]:
        return {v: lvl for lvl, ids in enumerate(self.levels) for v in ids}

    @cached_property
    def out_edges(self) -> dict[int, list[Edge]]:
        out = defaultdict(list)
        for e in self.edges:
            out[e.source].append(e)
        return dict(out)

    @cached_property
    def in_edges(self) -> dict[int, list[Edge]]:
        inc = defaultdict(list)
        for e in self.edges:
            inc[e.target].append(e)
        return dict(inc)

    def vertices(self) -> list[Vertex]:
        return [Vertex(v, lvl) for lvl, ids in enumerate(self.levels) for v in ids]

    def edges_from_level(self, level: int) -> list[Edge]:
        """Edges whose source sits at ``level`` (they land on ``level - 1``)."""
        return [e for v in self.levels[level] for e in self.out_edges.get(v, ())]

    def truncate(self, levels: int) -> "Diagram":
        """The sub-diagram on levels ``0..levels``."""
        keep = self.levels[: levels + 1]
        ids = {v for lvl in keep for v in lvl}
        return Diagram(
            self.spec,
            self.initial_label,
            keep,
            tuple(e for e in self.edges if e.source in ids),
        )


def init_diagram(spec: RingSpec, i: int) -> Diagram:
    if not 1 <= i <= spec.num_vars:
        raise InvalidInitialMapError(f"variable index {i} out of range 1..{spec.num_vars}")
    if i not in spec.variables_in_generators():
        raise InvalidInitialMapError(f"x{i} is not a factor of any generator of I")
    return Diagram(spec, i, ((0,), (1,)), (Edge(1, 0, i, 1),))


# -- one extension step ------------------------------------------------------


@dataclass(frozen=True)
class Demand:
    """A prospective new edge ``? -label-> target``.

    Diamond halves point at their partner's key and carry the product the
    two new signs must have.
    """

    target: int
    label: int
    origin: str  # "column" or "diamond"
    partner: tuple[int, int] | None = None
    parity: int | None = None

    @property
    def key(self) -> tuple[int, int]:
        return (self.target, self.label)


def collect_demands(diagram: Diagram, top_level: int | None = None) -> list[Demand]:
    if top_level is None:
        top_level = diagram.top_level
    spec = diagram.spec
    top_edges = sorted(diagram.edges_from_level(top_level))
    demands: list[Demand] = []

    for e in top_edges:
        for j in range(1, spec.num_vars + 1):
            if spec.in_ideal(e.label, j):
                demands.append(Demand(e.source, j, "column"))

    by_target = defaultdict(list)
    for e in top_edges:
        by_target[e.target].append(e)
    for w in sorted(by_target):
        group = by_target[w]
        for a in range(len(group)):
            for b in range(a + 1, len(group)):
                e1, e2 = group[a], group[b]
                if e1.source == e2.source or e1.label == e2.label:
                    continue
                if spec.in_ideal(e1.label, e2.label):
                    continue
                parity = -e1.sign * e2.sign
                h1 = (e1.source, e2.label)
                h2 = (e2.source, e1.label)
                demands.append(Demand(h1[0], h1[1], "diamond", h2, parity))
                demands.append(Demand(h2[0], h2[1], "diamond", h1, parity))
    return demands


class _UnionFind:
    def __init__(self):
        self.parent: dict = {}

    def find(self, a):
        self.parent.setdefault(a, a)
        root = a
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[a] != root:
            self.parent[a], a = root, self.parent[a]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # keep the smaller key as root so results do not depend on call order
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


def merge_demands(demands: list[Demand]) -> list[tuple[tuple[int, int], ...]]:
    """Group demands into new vertices.

    Identical ``(target, label)`` keys collapse to one edge, and the halves
    of each diamond are joined.  Each class is the sorted tuple of its edge
    keys; classes are ordered by their smallest key.
    """
    uf = _UnionFind()
    for d in demands:
        uf.find(d.key)
        if d.partner is not None:
            uf.union(d.key, d.partner)
    classes = defaultdict(set)
    for key in uf.parent:
        classes[uf.find(key)].add(key)
    return sorted(tuple(sorted(c)) for c in classes.values())


def parity_constraints(demands: list[Demand]) -> list[tuple[tuple[int, int], tuple[int, int], int]]:
    seen = set()
    out = []
    for d in demands:
        if d.partner is None:
            continue
        a, b = sorted((d.key, d.partner))
        item = (a, b, d.parity)
        if item not in seen:
            seen.add(item)
            out.append(item)
    return out


def assign_signs(classes, constraints, level: int = -1) -> dict[tuple[int, int], int]:
    """Solve ``sign(a) * sign(b) == parity`` for every constraint.

    Each connected component has exactly two solutions, negatives of each
    other.  We take the one with fewer negative edges; on a tie, the one
    putting the minus on the smallest ``(label, target)`` edge.  Edges with
    no constraint get ``+1``.
    """
    adj = defaultdict(list)
    for a, b, parity in constraints:
        adj[a].append((b, parity))
        adj[b].append((a, parity))

    signs: dict[tuple[int, int], int] = {}
    for cls in classes:
        for key in cls:
            signs[key] = 1

    done = set()
    for cls in classes:
        for start in cls:
            if start in done or start not in adj:
                continue
            comp_sign = {start: 1}
            parent = {start: None}
            queue = deque([start])
            while queue:
                a = queue.popleft()
                for b, parity in adj[a]:
                    want = comp_sign[a] * parity
                    if b not in comp_sign:
                        comp_sign[b] = want
                        parent[b] = a
                        queue.append(b)
                    elif comp_sign[b] != want:
                        raise SignConflictError(level, _odd_cycle(parent, a, b))
            negatives = sum(1 for s in comp_sign.values() if s < 0)
            flip = False
            if 2 * negatives > len(comp_sign):
                flip = True
            elif 2 * negatives == len(comp_sign):
                pivot = min(comp_sign, key=lambda k: (k[1], k[0]))
                flip = comp_sign[pivot] > 0
            for key, s in comp_sign.items():
                signs[key] = -s if flip else s
            done.update(comp_sign)
    return signs


def _odd_cycle(parent, a, b):
    def path(x):
        out = []
        while x is not None:
            out.append(x)
            x = parent[x]
        return out

    pa, pb = path(a), path(b)
    common = set(pa) & set(pb)
    pa = pa[: next(k for k, x in enumerate(pa) if x in common) + 1]
    pb = pb[: next(k for k, x in enumerate(pb) if x in common)]
    return pa + list(reversed(pb))


def extend_level(diagram: Diagram, check: bool = True) -> Diagram:
    """Add one level on top of ``diagram`` and return the new diagram."""
    from .complex import composite_witness

    new_level = diagram.top_level + 1
    demands = collect_demands(diagram)
    classes = merge_demands(demands)
    signs = assign_signs(classes, parity_constraints(demands), level=new_level)

    next_id = max(diagram.level_of) + 1
    new_ids = []
    new_edges = []
    # classes arrive sorted by smallest (target, label), which fixes the ids
    for cls in classes:
        vid = next_id
        next_id += 1
        new_ids.append(vid)
        for target, label in cls:
            new_edges.append(Edge(vid, target, label, signs[(target, label)]))

    extended = Diagram(
        diagram.spec,
        diagram.initial_label,
        diagram.levels + (tuple(new_ids),),
        diagram.edges + tuple(new_edges),
    )
    if check and new_level >= 2:
        witness = composite_witness(
            diagram.spec, new_edges, diagram.edges_from_level(new_level - 1)
        )
        if witness is not None:
            raise InternalConsistencyError(new_level, witness)
    return extended


def build(spec: RingSpec, initial_label: int, levels: int, check: bool = True) -> Diagram:
    """Initial edge followed by ``levels - 1`` extensions."""
    if levels < 1:
        raise ValueError("levels must be >= 1")
    diagram = init_diagram(spec, initial_label)
    for _ in range(levels - 1):
        diagram = extend_level(diagram, check=check)
    return diagram
