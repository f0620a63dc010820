"""Undirected tie networks, centrality measures and maximal cliques."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import ConvergenceError, DataError, SchemaError

KINDS = ("collaboration", "friendship", "interaction")


@dataclass(frozen=True)
class TieNetwork:
    kind: str
    nodes: tuple
    edges: frozenset  # of sorted (u, v) pairs, u < v

    @classmethod
    def build(cls, kind: str, nodes: Iterable[str], edges: Iterable = ()) -> "TieNetwork":
        if kind not in KINDS:
            raise DataError(f"kind must be one of {', '.join(KINDS)}")
        nodes = tuple(sorted(set(nodes)))
        known = set(nodes)
        clean = set()
        for e in edges:
            u, v = e
            if u == v:
                raise DataError(f"self-loop on {u!r}")
            if u not in known or v not in known:
                raise DataError(f"edge {u!r}-{v!r} references an unknown node")
            clean.add((u, v) if u < v else (v, u))
        return cls(kind, nodes, frozenset(clean))

    def neighbors(self) -> dict:
        adj = {n: set() for n in self.nodes}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def components(self) -> list:
        """Connected components as sorted tuples, in node order."""
        adj = self.neighbors()
        seen = set()
        out = []
        for start in self.nodes:
            if start in seen:
                continue
            comp = {start}
            queue = deque([start])
            while queue:
                u = queue.popleft()
                for w in adj[u]:
                    if w not in comp:
                        comp.add(w)
                        queue.append(w)
            seen |= comp
            out.append(tuple(sorted(comp)))
        return out

    def relabel(self, mapping) -> "TieNetwork":
        return TieNetwork.build(
            self.kind, (mapping[n] for n in self.nodes), ((mapping[u], mapping[v]) for u, v in self.edges)
        )

    def to_dict(self) -> dict:
        return {"kind": self.kind, "nodes": list(self.nodes), "edges": [list(e) for e in sorted(self.edges)]}

    @classmethod
    def from_dict(cls, data: dict) -> "TieNetwork":
        if not isinstance(data, dict):
            raise SchemaError("expected an object")
        if data.get("kind") not in KINDS:
            raise SchemaError(f"kind must be one of {', '.join(KINDS)}", "$.kind")
        if not isinstance(data.get("nodes"), list):
            raise SchemaError("expected a list", "$.nodes")
        edges = data.get("edges", [])
        for i, e in enumerate(edges):
            if not (isinstance(e, list) and len(e) == 2 and all(isinstance(x, str) for x in e)):
                raise SchemaError("expected a pair of node names", f"$.edges[{i}]")
        return cls.build(data["kind"], data["nodes"], edges)


def degree_centrality(net: TieNetwork) -> dict:
    deg = {n: 0 for n in net.nodes}
    for u, v in net.edges:
        deg[u] += 1
        deg[v] += 1
    return deg


def betweenness_centrality(net: TieNetwork) -> dict:
    """Unnormalized betweenness over unordered pairs, endpoints excluded (Brandes)."""
    adj = {n: sorted(ws) for n, ws in net.neighbors().items()}
    bc = {n: 0.0 for n in net.nodes}
    for s in net.nodes:
        stack = []
        preds = {n: [] for n in net.nodes}
        sigma = dict.fromkeys(net.nodes, 0)
        dist = dict.fromkeys(net.nodes, -1)
        sigma[s] = 1
        dist[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            stack.append(v)
            for w in adj[v]:
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    queue.append(w)
                if dist[w] == dist[v] + 1:
                    sigma[w] += sigma[v]
                    preds[w].append(v)
        delta = dict.fromkeys(net.nodes, 0.0)
        while stack:
            w = stack.pop()
            for v in preds[w]:
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w])
            if w != s:
                bc[w] += delta[w]
    # every unordered pair was counted from both ends
    return {n: b / 2.0 for n, b in bc.items()}


def largest_component(net: TieNetwork) -> tuple:
    comps = net.components()
    if not comps:
        return ()
    return min(comps, key=lambda c: (-len(c), c))


def eigenvector_centrality(net: TieNetwork, tol: float = 1e-9, max_iter: int = 10_000) -> dict:
    """Principal eigenvector on the largest component, unit Euclidean norm.

    Iterates with ``A + I`` so bipartite components (stars, paths) converge;
    the shift keeps the eigenvectors and only moves the spectrum.
    """
    if not net.nodes:
        raise DataError("eigenvector centrality of an empty network")
    result = {n: 0.0 for n in net.nodes}
    comp = largest_component(net)
    if len(comp) < 2:
        return result
    index = {n: i for i, n in enumerate(comp)}
    A = np.zeros((len(comp), len(comp)))
    for u, v in net.edges:
        if u in index and v in index:
            A[index[u], index[v]] = A[index[v], index[u]] = 1.0
    M = A + np.eye(len(comp))
    x = np.full(len(comp), 1.0 / np.sqrt(len(comp)))
    for _ in range(max_iter):
        y = M @ x
        y /= np.linalg.norm(y)
        if np.max(np.abs(y - x)) < tol:
            x = y
            break
        x = y
    else:
        raise ConvergenceError(f"eigenvector centrality did not converge in {max_iter} iterations")
    for n, i in index.items():
        result[n] = float(abs(x[i]))
    return result


def maximal_cliques(net: TieNetwork) -> list:
    """All maximal cliques of size >= 2 as sorted tuples, sorted lexicographically."""
    adj = net.neighbors()
    out = []

    def expand(r: set, p: set, x: set) -> None:
        if not p and not x:
            if len(r) >= 2:
                out.append(tuple(sorted(r)))
            return
        pivot = max(p | x, key=lambda u: (len(adj[u] & p), u))
        for v in sorted(p - adj[pivot]):
            expand(r | {v}, p & adj[v], x & adj[v])
            p = p - {v}
            x = x | {v}

    expand(set(), set(net.nodes), set())
    return sorted(out)


def to_dot(networks: Iterable[TieNetwork]) -> str:
    lines = ["graph networks {", "  node [shape=ellipse];"]
    for net in networks:
        lines.append(f'  subgraph "cluster_{net.kind}" {{')
        lines.append(f'    label="{net.kind}";')
        for n in net.nodes:
            lines.append(f'    "{net.kind}:{n}" [label="{n}"];')
        for u, v in sorted(net.edges):
            lines.append(f'    "{net.kind}:{u}" -- "{net.kind}:{v}";')
        lines.append("  }")
    lines.append("}")
    return "\n".join(lines) + "\n"
