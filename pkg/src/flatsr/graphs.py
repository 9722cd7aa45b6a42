"""Directed graphs with in- and out-degree at most one.

Every weak component of such a graph is a path or a cycle, and these graphs
encode exactly the subdirectly irreducible 3-nilpotent flat semirings.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable

from .errors import InputError, PreconditionError


@dataclass(frozen=True)
class DiGraph:
    vertices: tuple[str, ...]
    edges: frozenset[tuple[str, str]] = field(default_factory=frozenset)
    allow_isolated: bool = False
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        vs = tuple(str(v) for v in self.vertices)
        if len(set(vs)) != len(vs):
            raise InputError("vertex names must be distinct")
        edges = frozenset((str(a), str(b)) for a, b in self.edges)
        known = set(vs)
        for a, b in edges:
            if a not in known or b not in known:
                raise InputError(f"edge {a}->{b} uses an unknown vertex")
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "edges", edges)

    def successor(self, v: str) -> str | None:
        outs = [b for a, b in self.edges if a == v]
        return outs[0] if outs else None

    def out_degree(self, v: str) -> int:
        return sum(1 for a, _ in self.edges if a == v)

    def in_degree(self, v: str) -> int:
        return sum(1 for _, b in self.edges if b == v)


@dataclass(frozen=True)
class GraphVerdict:
    valid: bool
    reason: str = ""
    vertex: str | None = None

    def __bool__(self):
        return self.valid


def validate_graph(G: DiGraph) -> GraphVerdict:
    for v in G.vertices:
        if G.out_degree(v) > 1:
            return GraphVerdict(False, f"out-degree {G.out_degree(v)} at {v}", v)
        if G.in_degree(v) > 1:
            return GraphVerdict(False, f"in-degree {G.in_degree(v)} at {v}", v)
        if not G.allow_isolated and G.out_degree(v) == 0 and G.in_degree(v) == 0:
            return GraphVerdict(False, f"isolated vertex {v}", v)
    return GraphVerdict(True)


def require_valid(G: DiGraph) -> None:
    verdict = validate_graph(G)
    if not verdict:
        raise PreconditionError(f"invalid graph: {verdict.reason}", verdict.vertex)


@dataclass(frozen=True)
class Component:
    kind: str  # "path" or "cycle"
    size: int  # edges of a path, length of a cycle
    vertices: tuple[str, ...]  # in walk order

    def __str__(self):
        return f"{'Path' if self.kind == 'path' else 'Cycle'}({self.size})"


@dataclass(frozen=True)
class ComponentSummary:
    components: tuple[Component, ...]

    @property
    def paths(self) -> list[Component]:
        return [c for c in self.components if c.kind == "path"]

    @property
    def cycles(self) -> list[Component]:
        return [c for c in self.components if c.kind == "cycle"]

    @property
    def max_path_edges(self) -> int:
        """Edges of the longest path component, or -1 when there is none."""
        return max((c.size for c in self.paths), default=-1)

    @property
    def max_path_multiplicity(self) -> int:
        m = self.max_path_edges
        return sum(1 for c in self.paths if c.size == m)

    @property
    def cycle_length_set(self) -> frozenset[int]:
        return frozenset(c.size for c in self.cycles)

    @property
    def is_acyclic(self) -> bool:
        return not self.cycles

    def __str__(self):
        return "[" + ", ".join(str(c) for c in self.components) + "]"


def components(G: DiGraph) -> ComponentSummary:
    """Split ``G`` into weak components, each a path or a cycle.

    A component is a path when it has a vertex of in-degree 0 (an isolated
    vertex is a path with no edges).  Components are ordered by their least
    vertex name.
    """
    require_valid(G)
    succ = {a: b for a, b in G.edges}
    pred = {b: a for a, b in G.edges}
    seen: set[str] = set()
    comps = []
    for v in G.vertices:
        if v in seen:
            continue
        # walk back to a source, or around to v for a cycle
        start = v
        while start in pred and pred[start] != v:
            start = pred[start]
        if start in pred:  # came back round: cycle, start walk at v
            start = v
            walk = [start]
            while succ[walk[-1]] != start:
                walk.append(succ[walk[-1]])
            comp = Component("cycle", len(walk), tuple(walk))
        else:
            walk = [start]
            while walk[-1] in succ:
                walk.append(succ[walk[-1]])
            comp = Component("path", len(walk) - 1, tuple(walk))
        seen.update(comp.vertices)
        comps.append(comp)
    comps.sort(key=lambda c: min(c.vertices))
    return ComponentSummary(tuple(comps))


# ---------------------------------------------------------------------------
# building graphs


def path_graph(m: int, prefix: str = "a") -> DiGraph:
    """Path on ``m`` vertices ``a1 -> a2 -> ... -> am``."""
    vs = tuple(f"{prefix}{i}" for i in range(1, m + 1))
    return DiGraph(vs, frozenset(zip(vs, vs[1:])), allow_isolated=(m == 1), name=f"p{m}")


def cycle_graph(n: int, prefix: str = "a") -> DiGraph:
    vs = tuple(f"{prefix}{i}" for i in range(1, n + 1))
    return DiGraph(vs, frozenset(zip(vs, vs[1:] + vs[:1])), name=f"c{n}")


def disjoint_union(graphs: Iterable[DiGraph], name: str | None = None) -> DiGraph:
    """Disjoint union; vertex names get a ``_i`` suffix when they would clash."""
    graphs = list(graphs)
    names = [v for g in graphs for v in g.vertices]
    clash = len(set(names)) != len(names)
    vs, es = [], set()
    for i, g in enumerate(graphs, 1):
        rn = (lambda v, i=i: f"{v}_{i}") if clash else (lambda v: v)
        vs += [rn(v) for v in g.vertices]
        es |= {(rn(a), rn(b)) for a, b in g.edges}
    return DiGraph(tuple(vs), frozenset(es), any(g.allow_isolated for g in graphs), name)


def graph_from_components(kinds: Iterable[tuple[str, int]], allow_isolated: bool = False) -> DiGraph:
    """Graph with the given ``("path", edges)`` / ``("cycle", length)`` parts.

    Vertices are named ``v1, v2, ...`` in component order.
    """
    vs: list[str] = []
    es = set()
    counter = itertools.count(1)
    for kind, size in kinds:
        if kind == "path":
            part = [f"v{next(counter)}" for _ in range(size + 1)]
            es |= set(zip(part, part[1:]))
        elif kind == "cycle":
            part = [f"v{next(counter)}" for _ in range(size)]
            es |= set(zip(part, part[1:] + part[:1]))
        else:
            raise InputError(f"unknown component kind {kind!r}")
        vs += part
    return DiGraph(tuple(vs), frozenset(es), allow_isolated)


def _multisets(parts: list[tuple[str, int, int]], budget: int, start: int = 0):
    """Multisets of (kind, size, vertex_cost) with total cost <= budget."""
    yield []
    for i in range(start, len(parts)):
        kind, size, cost = parts[i]
        if cost <= budget:
            for rest in _multisets(parts, budget - cost, i):
                yield [(kind, size)] + rest


def graphs_up_to_iso(max_vertices: int, allow_isolated: bool = False, exact: int | None = None) -> list[DiGraph]:
    """One representative per isomorphism class of valid graphs.

    A valid graph is determined up to isomorphism by the multiset of its
    component types, so the classes are enumerated as multisets.
    """
    parts = [("cycle", L, L) for L in range(1, max_vertices + 1)]
    parts += [("path", e, e + 1) for e in range(0 if allow_isolated else 1, max_vertices)]
    out = []
    for ms in _multisets(parts, max_vertices):
        g = graph_from_components(ms, allow_isolated)
        if exact is None or len(g.vertices) == exact:
            out.append(g)
    out.sort(key=lambda g: (len(g.vertices), str(components(g))))
    return out


def same_up_to_renaming(G: DiGraph, H: DiGraph) -> bool:
    """Isomorphic as graphs (compares sorted component types)."""
    key = lambda g: sorted((c.kind, c.size) for c in components(g).components)
    return len(G.vertices) == len(H.vertices) and key(G) == key(H)


# ---------------------------------------------------------------------------
# text format


def dumps_graph(G: DiGraph) -> str:
    edges = " ".join(f"{a}->{b}" for a, b in sorted(G.edges))
    lines = [f"graph {G.name or 'unnamed'}", "vertices " + " ".join(G.vertices), ("edges " + edges).rstrip()]
    if G.allow_isolated:
        lines.append("isolated allowed")
    return "\n".join(lines) + "\n"


def loads_graph(text: str) -> DiGraph:
    name, vertices, edges, allow = None, None, [], False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        if head == "graph":
            name = rest.strip() or None
        elif head == "vertices":
            vertices = tuple(rest.split())
        elif head == "edges":
            for tok in rest.split():
                a, arrow, b = tok.partition("->")
                if not arrow or not a or not b:
                    raise InputError(f"line {lineno}: bad edge {tok!r}")
                edges.append((a, b))
        elif head == "isolated" and rest.strip() == "allowed":
            allow = True
        else:
            raise InputError(f"line {lineno}: unexpected {line!r}")
    if vertices is None:
        raise InputError("graph spec needs a 'vertices' line")
    if len(set(edges)) != len(edges):
        raise InputError("duplicate edge")
    return DiGraph(vertices, frozenset(edges), allow, None if name == "unnamed" else name)


# ---------------------------------------------------------------------------
# from SI 3-nilpotent flat semirings back to graphs


def semiring_to_graph(S, with_certificate: bool = False):
    """Recover the graph of an SI flat semiring with ``S^3 = 0``.

    The vertices are the elements other than 0 and ω, with an edge wherever
    the product is ω.  With ``with_certificate`` also returns an
    isomorphism from ``from_graph`` of the result onto ``S``.
    """
    from .constructors import OMEGA, ZERO, from_graph
    from .semiring import IsoCertificate, flat_profile

    prof = flat_profile(S)
    if not prof.is_flat:
        raise PreconditionError(f"{S.name or 'input'} is not flat")
    if prof.nilpotency_class is None or prof.nilpotency_class > 3:
        raise PreconditionError(f"{S.name or 'input'} is not 3-nilpotent", prof.nilpotency_class)
    if not prof.is_si:
        raise PreconditionError(f"{S.name or 'input'} is not subdirectly irreducible", sorted(prof.annihilators))
    zero = prof.zero
    (omega,) = prof.annihilators
    verts = [x for x in S.elements() if x not in (zero, omega)]
    names = [S.labels[x] for x in verts]
    if {ZERO, OMEGA} & set(names):
        names = [f"v{x}" for x in verts]
    edges = frozenset((names[i], names[j]) for i, x in enumerate(verts) for j, y in enumerate(verts) if S.mul[x][y] == omega)
    G = DiGraph(tuple(names), edges, allow_isolated=True, name=S.name)
    if not with_certificate:
        return G
    cert = IsoCertificate(tuple([zero, omega] + verts))
    if not cert.check(from_graph(G), S):
        raise AssertionError("graph round trip is not an isomorphism")
    return G, cert
