"""Equivariant maps from gain graphs into the Bruhat-Tits tree.

An assignment puts a tree vertex a(u) at each graph vertex u.  An edge
(u, v, g) contributes d(a(u), g a(v))^2 to the energy; zero energy means the
assignment is flat along every edge.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Hashable, Mapping

from . import bttree
from .arith.laurent import LaurentSeries
from .bttree import Vertex
from .errors import SweepBudgetExceeded
from .matrix import Matrix2, check_det_one

TreeAssignment = dict  # graph vertex -> bttree.Vertex


@dataclass(frozen=True)
class GainEdge:
    source: Hashable
    target: Hashable
    gain: Matrix2
    label: str = ""

    @property
    def is_loop(self) -> bool:
        return self.source == self.target


class GainGraph:
    """Finite connected graph with SL(2, F_p((t))) edge labels."""

    def __init__(self, vertices, edges, check: bool = True):
        self.vertices = list(dict.fromkeys(vertices))
        self.edges: list[GainEdge] = []
        for e in edges:
            if not isinstance(e, GainEdge):
                e = GainEdge(*e)
            self.edges.append(e)
        known = set(self.vertices)
        for e in self.edges:
            for x in (e.source, e.target):
                if x not in known:
                    raise ValueError(f"edge endpoint {x!r} is not a vertex")
            if check:
                check_det_one(e.gain, f"gain on edge {e.source}->{e.target}")
        if not self.vertices:
            raise ValueError("gain graph needs at least one vertex")
        if check and not self.is_connected():
            raise ValueError("gain graph is not connected")
        self._incident = {u: [] for u in self.vertices}
        for e in self.edges:
            self._incident[e.source].append(e)
            if not e.is_loop:
                self._incident[e.target].append(e)

    @classmethod
    def from_edges(cls, edges) -> GainGraph:
        verts = []
        for e in edges:
            verts += [e[0], e[1]] if not isinstance(e, GainEdge) else [e.source, e.target]
        return cls(verts, edges)

    @property
    def p(self) -> int:
        return self.edges[0].gain.a.p if self.edges else 2

    def incident(self, u) -> list[GainEdge]:
        return self._incident[u]

    def is_connected(self) -> bool:
        adj = {u: set() for u in self.vertices}
        for e in self.edges:
            adj[e.source].add(e.target)
            adj[e.target].add(e.source)
        start = self.vertices[0]
        seen = {start}
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in adj[u] - seen:
                seen.add(w)
                queue.append(w)
        return len(seen) == len(self.vertices)

    def cycle_rank(self) -> int:
        return len(self.edges) - len(self.vertices) + 1


def constant_assignment(G: GainGraph, v: Vertex | None = None) -> TreeAssignment:
    v = v or bttree.base_vertex(G.p)
    return {u: v for u in G.vertices}


def edge_displacement(e: GainEdge, a: Mapping) -> int:
    return bttree.distance(a[e.source], bttree.act(e.gain, a[e.target]))


def energy(G: GainGraph, a: Mapping) -> int:
    return sum(edge_displacement(e, a) ** 2 for e in G.edges)


def local_energy(G: GainGraph, a: Mapping, u, x: Vertex) -> int:
    """Energy of the edges at u when u is moved to x."""
    total = 0
    for e in G.incident(u):
        src = x if e.source == u else a[e.source]
        tgt = x if e.target == u else a[e.target]
        total += bttree.distance(src, bttree.act(e.gain, tgt)) ** 2
    return total


def _pulled_back_points(G: GainGraph, a: Mapping, u) -> list[Vertex]:
    x = a[u]
    pts = []
    for e in G.incident(u):
        if e.is_loop:
            pts += [x, bttree.act(e.gain, x), bttree.act(e.gain.adjugate(), x)]
        elif e.source == u:
            pts.append(bttree.act(e.gain, a[e.target]))
        else:
            pts.append(bttree.act(e.gain.adjugate(), a[e.source]))
    return pts or [x]


def hull(points) -> list[Vertex]:
    """Vertices of the subtree spanned by ``points``, sorted canonically."""
    points = list(points)
    anchor = points[0]
    out = {anchor}
    for q in points[1:]:
        out.update(bttree.geodesic(anchor, q).vertices)
    return sorted(out)


def local_update(G: GainGraph, a: Mapping, u) -> Vertex:
    """Best position for u with every other vertex held fixed (ties: canonical order)."""
    candidates = set(hull(_pulled_back_points(G, a, u)))
    candidates.add(a[u])
    best, best_val = None, None
    for x in sorted(candidates):
        val = local_energy(G, a, u, x)
        if best_val is None or val < best_val:
            best, best_val = x, val
    return best


@dataclass
class MinimizeResult:
    assignment: TreeAssignment
    trace: list[int]
    sweeps: int
    converged: bool
    max_sweeps: int = 0

    @property
    def energy(self) -> int:
        return self.trace[-1]


def flat_components(G: GainGraph, a: Mapping) -> list[tuple[Hashable, dict]]:
    """Components of the zero-displacement edges, each as (root, transports).

    ``transports[u]`` is T_u with a(u) = T_u a(root) along flat edges, so the
    whole component moves rigidly when the root does.
    """
    adj: dict = {u: [] for u in G.vertices}
    for e in G.edges:
        if not e.is_loop and edge_displacement(e, a) == 0:
            # a(source) = g a(target)
            adj[e.source].append((e.target, e.gain.adjugate()))
            adj[e.target].append((e.source, e.gain))
    one = Matrix2.identity_like(LaurentSeries.constant(G.p, 1))
    seen: set = set()
    out = []
    for r in G.vertices:
        if r in seen:
            continue
        T = {r: one}
        seen.add(r)
        stack = [r]
        while stack:
            u = stack.pop()
            for w, step in adj[u]:
                if w not in seen:
                    seen.add(w)
                    T[w] = step @ T[u]
                    stack.append(w)
        out.append((r, T))
    return out


def component_update(G: GainGraph, a: Mapping) -> TreeAssignment | None:
    """Move one flat component rigidly when that lowers the energy (first component that can)."""
    current = energy(G, a)
    for r, T in flat_components(G, a):
        if len(T) == len(G.vertices):
            continue
        pts = [a[r]]
        for e in G.edges:
            s_in, t_in = e.source in T, e.target in T
            if s_in and not t_in:
                pts.append(bttree.act(T[e.source].adjugate() @ e.gain, a[e.target]))
            elif t_in and not s_in:
                pts.append(bttree.act(T[e.target].adjugate() @ e.gain.adjugate(), a[e.source]))
            elif s_in:
                h = T[e.source].adjugate() @ e.gain @ T[e.target]
                pts += [bttree.act(h, a[r]), bttree.act(h.adjugate(), a[r])]
        best, best_val = None, current
        for x in hull(pts):
            moved = dict(a)
            for u, Tu in T.items():
                moved[u] = bttree.act(Tu, x)
            val = energy(G, moved)
            if val < best_val:
                best, best_val = moved, val
        if best is not None:
            return best
    return None


def minimize(G: GainGraph, init: Mapping | None = None, max_sweeps: int = 100, strict: bool = False) -> MinimizeResult:
    """Cyclic coordinate descent in vertex order; a move is taken only when it lowers energy.

    A sweep that moves no single vertex tries to move a whole flat component
    instead (single-vertex moves stall on parity and plateau configurations).
    ``trace`` holds the energy before the first sweep and after each sweep.
    Without convergence the best assignment is returned with ``converged``
    false, or SweepBudgetExceeded is raised when ``strict``.
    """
    a = dict(init) if init is not None else constant_assignment(G)
    trace = [energy(G, a)]
    sweeps = 0
    converged = False
    while sweeps < max_sweeps:
        changed = False
        for u in G.vertices:
            cur = local_energy(G, a, u, a[u])
            x = local_update(G, a, u)
            if x != a[u] and local_energy(G, a, u, x) < cur:
                a[u] = x
                changed = True
        if not changed and trace[-1] > 0:
            moved = component_update(G, a)
            if moved is not None:
                a = moved
                changed = True
        sweeps += 1
        trace.append(energy(G, a))
        if not changed:
            converged = True
            break
    result = MinimizeResult(a, trace, sweeps, converged, max_sweeps)
    if not converged and strict:
        err = SweepBudgetExceeded(f"no fixed point after {max_sweeps} sweeps (energy {trace[-1]})")
        err.result = result
        raise err
    return result


def is_local_minimizer(G: GainGraph, a: Mapping) -> bool:
    """No single-vertex move to a neighbor, or to the local_update choice, lowers energy."""
    for u in G.vertices:
        cur = local_energy(G, a, u, a[u])
        for x in bttree.fast_neighbors(a[u]) + [local_update(G, a, u)]:
            if local_energy(G, a, u, x) < cur:
                return False
    return True


def midpoint_assignment(a0: Mapping, a1: Mapping) -> TreeAssignment:
    """Vertex-wise geodesic midpoints (every pair must be at even distance)."""
    return {u: bttree.midpoint(a0[u], a1[u]) for u in a0}


# --- Reeb graph -------------------------------------------------------------

@dataclass
class ReebGraph:
    nodes: list[tuple]  # each node: sorted tuple of original graph vertices
    edges: list[tuple[int, int, int]] = field(default_factory=list)  # (i, j, weight)

    @property
    def is_point(self) -> bool:
        return len(self.nodes) == 1 and not self.edges

    @property
    def total_weight(self) -> int:
        return sum(w for _, _, w in self.edges)

    def cycle_rank(self) -> int:
        return len(self.edges) - len(self.nodes) + 1

    def to_dot(self, name: str = "reeb") -> str:
        lines = [f"digraph {name} {{"]
        for i, node in enumerate(self.nodes):
            label = ",".join(str(u) for u in node)
            lines.append(f'  r{i} [label="{{{label}}}"];')
        for i, j, w in self.edges:
            lines.append(f'  r{i} -> r{j} [label="{w}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def reeb_contract(G: GainGraph, a: Mapping) -> ReebGraph:
    """Contract zero-displacement edges; surviving edges carry their displacement."""
    parent = {u: u for u in G.vertices}

    def find(u):
        while parent[u] != u:
            parent[u] = parent[parent[u]]
            u = parent[u]
        return u

    disp = [edge_displacement(e, a) for e in G.edges]
    for e, d in zip(G.edges, disp):
        if d == 0:
            ru, rv = find(e.source), find(e.target)
            if ru != rv:
                parent[rv] = ru
    order = {u: i for i, u in enumerate(G.vertices)}
    groups: dict = {}
    for u in G.vertices:
        groups.setdefault(find(u), []).append(u)
    nodes = sorted((tuple(sorted(g, key=order.get)) for g in groups.values()), key=lambda t: order[t[0]])
    index = {u: i for i, node in enumerate(nodes) for u in node}
    edges = [(index[e.source], index[e.target], d) for e, d in zip(G.edges, disp) if d > 0]
    return ReebGraph(nodes, edges)
