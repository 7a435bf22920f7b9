"""Finite crystal graphs: generation from a highest path, tensor products,
axiom checking, isomorphism testing, and DOT/JSON export."""

from __future__ import annotations

import json
from collections import Counter, deque
from dataclasses import dataclass, field
from fractions import Fraction

from .crystal_ops import lower_path, raise_path
from .errors import CapExceededError, DomainError
from .paths import Path, path_from_json, path_to_json
from .root_data import RootDatum, Weight, cartan_datum

DEFAULT_CAP = 100_000


@dataclass(eq=False)
class CrystalGraph:
    """Nodes with colored ``f``/``e`` edges and cached statistics.

    ``f_edges[(n, i)]`` is the index of ``f_i`` applied to node ``n`` (absent
    when the operator vanishes); ``e_edges`` likewise.  ``eps[n]`` and
    ``phi[n]`` are tuples in index-set order.  ``level`` is ``"full"`` or
    ``"classical"`` (weights taken modulo delta).
    """

    datum: RootDatum
    nodes: list
    weights: list
    f_edges: dict
    e_edges: dict
    eps: list
    phi: list
    level: str = "full"
    index: dict = field(default=None, repr=False)

    def __post_init__(self):
        if self.index is None:
            self.index = {b: n for n, b in enumerate(self.nodes)}

    def __len__(self):
        return len(self.nodes)

    def __eq__(self, other):
        if not isinstance(other, CrystalGraph):
            return NotImplemented
        return (self.datum == other.datum and self.level == other.level
                and self.nodes == other.nodes and self.weights == other.weights
                and self.f_edges == other.f_edges and self.e_edges == other.e_edges
                and self.eps == other.eps and self.phi == other.phi)

    @property
    def index_set(self):
        return self.datum.index_set

    def f(self, n, i):
        return self.f_edges.get((n, i))

    def e(self, n, i):
        return self.e_edges.get((n, i))

    def edges(self):
        """``(src, dst, color)`` for every f-edge, sorted."""
        return sorted((n, m, i) for (n, i), m in self.f_edges.items())

    def stat(self, table, n, i):
        return table[n][self.datum.position(i)]

    def highest_weight_nodes(self):
        return [n for n in range(len(self)) if not any(self.eps[n])]

    def components(self):
        """Connected components (lists of node indices, each sorted)."""
        adj = [[] for _ in range(len(self))]
        for (n, _), m in self.f_edges.items():
            adj[n].append(m)
            adj[m].append(n)
        for (n, _), m in self.e_edges.items():
            adj[n].append(m)
            adj[m].append(n)
        seen = [False] * len(self)
        out = []
        for s in range(len(self)):
            if seen[s]:
                continue
            seen[s] = True
            comp, todo = [], [s]
            while todo:
                n = todo.pop()
                comp.append(n)
                for m in adj[n]:
                    if not seen[m]:
                        seen[m] = True
                        todo.append(m)
            out.append(sorted(comp))
        return out


def _string_lengths(n_nodes, edges, index_set):
    """Length of the i-string starting at each node along ``edges``."""
    out = []
    for n in range(n_nodes):
        row = []
        for i in index_set:
            k, m = 0, edges.get((n, i))
            while m is not None:
                k += 1
                m = edges.get((m, i))
                if k > n_nodes:
                    raise AssertionError("cyclic i-string")
            row.append(k)
        out.append(tuple(row))
    return out


def generate(datum: RootDatum, lam: Weight, node_cap: int = DEFAULT_CAP,
             projected: bool = False, order=None) -> CrystalGraph:
    """Closure of the straight path to ``lam`` under all ``e_i``, ``f_i``.

    Nodes are numbered in BFS discovery order, scanning indices in
    ``order`` (default: the index set).  With ``projected`` the operators act
    modulo delta and the result is a classical-level graph.
    """
    if not datum.is_integral(lam):
        raise DomainError("generation needs an integral weight")
    order = tuple(order or datum.index_set)
    start = Path.straight(lam.classical() if projected else lam)
    nodes, index = [start], {start: 0}
    f_edges, e_edges = {}, {}
    queue = deque([(0, 0)])
    max_depth = 0
    while queue:
        n, d = queue.popleft()
        max_depth = max(max_depth, d)
        p = nodes[n]
        for i in order:
            for op, edges in ((lower_path, f_edges), (raise_path, e_edges)):
                q = op(p, i, datum, projected=projected)
                if q is None:
                    continue
                m = index.get(q)
                if m is None:
                    if len(nodes) >= node_cap:
                        raise CapExceededError(
                            f"crystal exceeds node cap {node_cap}",
                            {"nodes": len(nodes), "frontier": len(queue), "depth": max_depth},
                        )
                    m = index[q] = len(nodes)
                    nodes.append(q)
                    queue.append((m, d + 1))
                edges[(n, i)] = m
    f_edges = dict(sorted(f_edges.items()))
    e_edges = dict(sorted(e_edges.items()))
    weights = [p.endpoint.classical() if projected else p.endpoint for p in nodes]
    return CrystalGraph(
        datum=datum,
        nodes=nodes,
        weights=weights,
        f_edges=f_edges,
        e_edges=e_edges,
        eps=_string_lengths(len(nodes), e_edges, datum.index_set),
        phi=_string_lengths(len(nodes), f_edges, datum.index_set),
        level="classical" if projected else "full",
        index=index,
    )


def explore(datum: RootDatum, start: Path, depth: int, projected=False):
    """Paths reachable from ``start`` by words of length at most ``depth``
    in the ``e_i`` and ``f_i`` (for crystals too large to close)."""
    seen = {start: 0}
    order = [start]
    frontier = [start]
    for d in range(depth):
        nxt = []
        for p in frontier:
            for i in datum.index_set:
                for op in (lower_path, raise_path):
                    q = op(p, i, datum, projected=projected)
                    if q is not None and q not in seen:
                        seen[q] = d + 1
                        order.append(q)
                        nxt.append(q)
        frontier = nxt
    return order


def trivial(datum: RootDatum, level="full") -> CrystalGraph:
    """One-node crystal of weight zero."""
    zero = tuple(0 for _ in datum.index_set)
    return CrystalGraph(datum, [Path.empty(datum.rank)], [datum.zero()], {}, {},
                        [zero], [zero], level)


# -- tensor products ----------------------------------------------------------


def tensor(b1: CrystalGraph, b2: CrystalGraph) -> CrystalGraph:
    """Tensor product with the signature rule: ``f_i`` acts on the left factor
    iff ``phi_i(b1) > eps_i(b2)``; ``e_i`` acts on the left iff
    ``phi_i(b1) >= eps_i(b2)``."""
    if b1.datum.index_set != b2.datum.index_set or b1.datum.matrix != b2.datum.matrix:
        raise DomainError("tensor factors must share a root datum")
    datum = b1.datum
    n2 = len(b2)
    nodes, weights, eps, phi = [], [], [], []
    f_edges, e_edges = {}, {}
    for a in range(len(b1)):
        for b in range(n2):
            nodes.append((b1.nodes[a], b2.nodes[b]))
            w = b1.weights[a] + b2.weights[b]
            weights.append(w)
            er, pr = [], []
            for p, i in enumerate(datum.index_set):
                e1, p1 = b1.eps[a][p], b1.phi[a][p]
                e2, p2 = b2.eps[b][p], b2.phi[b][p]
                er.append(max(e1, e2 - (p1 - e1)))
                pr.append(max(p2, p1 + (p2 - e2)))
                n = a * n2 + b
                if p1 > e2:
                    t = b1.f(a, i)
                    if t is not None:
                        f_edges[(n, i)] = t * n2 + b
                else:
                    t = b2.f(b, i)
                    if t is not None:
                        f_edges[(n, i)] = a * n2 + t
                if p1 >= e2:
                    t = b1.e(a, i)
                    if t is not None:
                        e_edges[(n, i)] = t * n2 + b
                else:
                    t = b2.e(b, i)
                    if t is not None:
                        e_edges[(n, i)] = a * n2 + t
            eps.append(tuple(er))
            phi.append(tuple(pr))
    level = "classical" if "classical" in (b1.level, b2.level) else "full"
    return CrystalGraph(datum, nodes, weights, dict(sorted(f_edges.items())),
                        dict(sorted(e_edges.items())), eps, phi, level)


def tensor_all(factors) -> CrystalGraph:
    factors = list(factors)
    out = factors[0]
    for b in factors[1:]:
        out = tensor(out, b)
    return out


# -- axioms ---------------------------------------------------------------


def check_axioms(B: CrystalGraph):
    """All abstract-crystal axioms plus regularity; returns a list of
    violation messages (empty when the graph is a regular crystal)."""
    datum = B.datum
    bad = []
    if len(set(B.nodes)) != len(B.nodes):
        bad.append("duplicate nodes")
    n_nodes = len(B)
    classical = B.level == "classical"
    alphas = {}
    for i in datum.index_set:
        a = datum.simple_root(i)
        alphas[i] = a.classical() if classical else a
    e_len = _string_lengths(n_nodes, B.e_edges, datum.index_set)
    f_len = _string_lengths(n_nodes, B.f_edges, datum.index_set)
    for (n, i), m in list(B.f_edges.items()) + list(B.e_edges.items()):
        if not 0 <= m < n_nodes:
            bad.append(f"dangling edge ({n}, {i}) -> {m}")
    for n in range(n_nodes):
        wt = B.weights[n]
        for p, i in enumerate(datum.index_set):
            eps, phi = B.eps[n][p], B.phi[n][p]
            if phi != eps + datum.pair(i, wt):
                bad.append(f"node {n}, i={i}: phi != eps + <alpha^vee, wt>")
            if eps != e_len[n][p] or phi != f_len[n][p]:
                bad.append(f"node {n}, i={i}: not regular")
            m = B.e(n, i)
            if m is not None:
                if B.eps[m][p] != eps - 1 or B.phi[m][p] != phi + 1:
                    bad.append(f"node {n}, i={i}: statistics of e_i b")
                if B.weights[m] != wt + alphas[i]:
                    bad.append(f"node {n}, i={i}: wt(e_i b) != wt(b) + alpha_i")
                if B.f(m, i) != n:
                    bad.append(f"node {n}, i={i}: f_i e_i b != b")
            m = B.f(n, i)
            if m is not None:
                if B.eps[m][p] != eps + 1 or B.phi[m][p] != phi - 1:
                    bad.append(f"node {n}, i={i}: statistics of f_i b")
                if B.weights[m] != wt - alphas[i]:
                    bad.append(f"node {n}, i={i}: wt(f_i b) != wt(b) - alpha_i")
                if B.e(m, i) != n:
                    bad.append(f"node {n}, i={i}: e_i f_i b != b")
    return bad


# -- isomorphism --------------------------------------------------------------


def _refine(graphs):
    """Joint color refinement over several graphs; returns per-graph color
    lists using a shared palette."""
    colors = []
    for B in graphs:
        colors.append([(B.weights[n], B.eps[n], B.phi[n]) for n in range(len(B))])
    palette_size = None
    while True:
        sigs = []
        for B, col in zip(graphs, colors):
            sig = []
            for n in range(len(B)):
                nb = tuple((col[B.f(n, i)] if B.f(n, i) is not None else None,
                            col[B.e(n, i)] if B.e(n, i) is not None else None)
                           for i in B.index_set)
                sig.append((col[n], nb))
            sigs.append(sig)
        palette = {s: k for k, s in enumerate(sorted({s for sig in sigs for s in sig}, key=repr))}
        colors = [[palette[s] for s in sig] for sig in sigs]
        if len(palette) == palette_size:
            return colors
        palette_size = len(palette)


def _extend(B1, B2, c1, c2, r1, r2, allowed):
    """Propagate ``r1 -> r2`` along edges; ``None`` if inconsistent."""
    mapping = {r1: r2}
    used = {r2}
    todo = [r1]
    while todo:
        n = todo.pop()
        m = mapping[n]
        for i in B1.index_set:
            for get in ("f", "e"):
                a = getattr(B1, get)(n, i)
                b = getattr(B2, get)(m, i)
                if (a is None) != (b is None):
                    return None
                if a is None:
                    continue
                if a in mapping:
                    if mapping[a] != b:
                        return None
                    continue
                if b in used or b not in allowed or c1[a] != c2[b]:
                    return None
                mapping[a] = b
                used.add(b)
                todo.append(a)
    return mapping


def is_isomorphic(B1: CrystalGraph, B2: CrystalGraph):
    """Decide whether a bijection preserving colored edges and all node
    statistics exists.  Returns ``(True, mapping)`` or ``(False, None)``."""
    if len(B1) != len(B2) or B1.datum.index_set != B2.datum.index_set:
        return False, None
    c1, c2 = _refine([B1, B2])
    if Counter(c1) != Counter(c2):
        return False, None
    comps2 = B2.components()
    free = list(range(len(comps2)))
    mapping = {}
    for comp in B1.components():
        hist = Counter(c1[n] for n in comp)
        root = min(comp, key=lambda n: (hist[c1[n]], n))
        found = False
        for k in list(free):
            comp2 = comps2[k]
            if len(comp2) != len(comp) or Counter(c2[n] for n in comp2) != hist:
                continue
            allowed = set(comp2)
            for cand in comp2:
                if c2[cand] != c1[root]:
                    continue
                sub = _extend(B1, B2, c1, c2, root, cand, allowed)
                if sub is not None and len(sub) == len(comp):
                    mapping.update(sub)
                    free.remove(k)
                    found = True
                    break
            if found:
                break
        if not found:
            return False, None
    return True, mapping


def relabel(B: CrystalGraph, perm) -> CrystalGraph:
    """Copy of ``B`` with node ``n`` moved to position ``perm[n]``."""
    inv = [0] * len(perm)
    for n, m in enumerate(perm):
        inv[m] = n
    return CrystalGraph(
        B.datum,
        [B.nodes[inv[m]] for m in range(len(B))],
        [B.weights[inv[m]] for m in range(len(B))],
        dict(sorted(((perm[n], i), perm[m]) for (n, i), m in B.f_edges.items())),
        dict(sorted(((perm[n], i), perm[m]) for (n, i), m in B.e_edges.items())),
        [B.eps[inv[m]] for m in range(len(B))],
        [B.phi[inv[m]] for m in range(len(B))],
        B.level,
    )


# -- export -----------------------------------------------------------------


def _weight_json(w: Weight, datum: RootDatum):
    return {
        "lambda": {str(i): f"{c.numerator}/{c.denominator}" for i, c in zip(datum.index_set, w.coords) if c},
        "delta": f"{w.delta.numerator}/{w.delta.denominator}",
    }


def _node_json(b, datum):
    if isinstance(b, Path):
        return path_to_json(b, datum)
    return {"tensor": [_node_json(x, datum) for x in b]}


def _node_from_json(obj, datum):
    if isinstance(obj, dict):
        return tuple(_node_from_json(x, datum) for x in obj["tensor"])
    return path_from_json(obj, datum)


def export_json(B: CrystalGraph) -> str:
    datum = B.datum
    doc = {
        "cartan_type": str(datum.cartan_type),
        "level": B.level,
        "nodes": [
            {
                "id": n,
                "path": _node_json(B.nodes[n], datum),
                "wt": _weight_json(B.weights[n], datum),
                "eps": {str(i): B.eps[n][p] for p, i in enumerate(datum.index_set)},
                "phi": {str(i): B.phi[n][p] for p, i in enumerate(datum.index_set)},
            }
            for n in range(len(B))
        ],
        "edges": [{"src": s, "dst": d, "color": i} for s, d, i in B.edges()],
    }
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"


def import_json(text: str) -> CrystalGraph:
    doc = json.loads(text)
    datum = cartan_datum(doc["cartan_type"])
    nodes, weights, eps, phi = [], [], [], []
    for k, nd in enumerate(sorted(doc["nodes"], key=lambda x: x["id"])):
        if nd["id"] != k:
            raise DomainError("node ids must be 0..n-1")
        nodes.append(_node_from_json(nd["path"], datum))
        wt = nd["wt"]
        weights.append(datum.weight({int(i): Fraction(c) for i, c in wt["lambda"].items()},
                                    Fraction(wt["delta"])))
        eps.append(tuple(nd["eps"][str(i)] for i in datum.index_set))
        phi.append(tuple(nd["phi"][str(i)] for i in datum.index_set))
    f_edges = dict(sorted(((e["src"], e["color"]), e["dst"]) for e in doc["edges"]))
    e_edges = dict(sorted(((d, i), s) for (s, i), d in f_edges.items()))
    return CrystalGraph(datum, nodes, weights, f_edges, e_edges, eps, phi, doc["level"])


def export_dot(B: CrystalGraph) -> str:
    datum = B.datum
    lines = ["digraph crystal {"]
    for n in range(len(B)):
        label = datum.format_weight(B.weights[n])
        lines.append(f'  n{n} [label="{label}"];')
    for s, d, i in B.edges():
        lines.append(f"  n{s} -> n{d} [label={i}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def summary(B: CrystalGraph) -> str:
    datum = B.datum
    count = len(B)
    lines = [f"{count} node" + ("" if count == 1 else "s")]
    mult = Counter(datum.format_weight(w) for w in B.weights)
    lines.append("weights:")
    for w, k in sorted(mult.items()):
        lines.append(f"  {w}: {k}")
    lines.append("highest weight nodes:")
    for n in B.highest_weight_nodes():
        lines.append(f"  {n}: {datum.format_weight(B.weights[n])}")
    return "\n".join(lines) + "\n"
