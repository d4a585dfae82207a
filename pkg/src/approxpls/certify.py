"""Reusable certificate sub-schemes.

* comparison: certifies ``sum_v h(v) >= K`` by subtree sums on a BFS tree,
* two-candidate leader election on odd rings (constant-size colours),
* minimum spanning tree via Borůvka fragment phases,
* Hamiltonian cycle and terminal-spanning tree feasibility.

Identifier fields use the instance-wide width ``id_bits`` that is part of
every node's input.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

from .bits import BitReader, gamma, read_sint, sint, uint
from .graph import ConfigurationGraph, Graph, LocalInput
from .gpls import LabelAssignment, LocalView, ProverRefusal, Scheme
from .problems import (Kind, decode_edge_set, edge_adjacency, is_hamiltonian_cycle,
                       is_tree_spanning, local_node_bit, local_port_bits)


def bfs_tree(g: Graph, root: int, allowed: Optional[set] = None) -> Tuple[Dict[int, int], Dict[int, int], List[int]]:
    """Parent and depth maps of a BFS tree, plus the visiting order."""
    parent = {root: root}
    dist = {root: 0}
    order = [root]
    queue = deque([root])
    while queue:
        x = queue.popleft()
        for y in g.neighbors(x):
            if y not in dist and (allowed is None or y in allowed):
                dist[y] = dist[x] + 1
                parent[y] = x
                order.append(y)
                queue.append(y)
    return parent, dist, order


# --------------------------------------------------------------- comparison
#
# Two layouts, both ``own | X | Y | agg`` with agg in two's complement:
#   K > 0  : X = parent id, Y = depth.  Depth forbids parent cycles; several
#            roots are harmless because each root sum is >= K > 0.
#   K <= 0 : X = root id, Y = parent id.  A unique root is forced by
#            agreement; parent cycles not reaching it are harmless because
#            the subtree-sum equations force their h-values to sum to 0.


@dataclass(frozen=True)
class CmpLabel:
    own: int
    x: int
    y: int
    agg: int


def encode_cmp(lab: CmpLabel, idw: int) -> str:
    return uint(lab.own, idw) + uint(lab.x, idw) + uint(lab.y, idw) + sint(lab.agg)


def decode_cmp(bits: str, idw: int) -> CmpLabel:
    r = BitReader(bits)
    own, x, y = r.uint(idw), r.uint(idw), r.uint(idw)
    rest = r.rest()
    return CmpLabel(own, x, y, read_sint(rest))


def comparison_labels(g: Graph, h: Mapping[int, int], K: int, strict: bool = True) -> LabelAssignment:
    total = sum(h[v] for v in g.nodes)
    if strict and total < K:
        raise ProverRefusal(f"sum h = {total} < {K}")
    root = min(g.nodes)
    parent, dist, order = bfs_tree(g, root)
    agg = {v: h[v] for v in g.nodes}
    for v in reversed(order[1:]):
        agg[parent[v]] += agg[v]
    idw = g.id_bits
    out = {}
    for v in g.nodes:
        if K > 0:
            lab = CmpLabel(v, parent[v], dist[v], agg[v])
        else:
            lab = CmpLabel(v, root, parent[v], agg[v])
        out[v] = encode_cmp(lab, idw)
    return out


def comparison_prove(g: Graph, h: Mapping[int, int], k: int) -> LabelAssignment:
    return comparison_labels(g, h, k, strict=True)


def comparison_check(my_id: int, idw: int, hv: int, K: int, label: str, nbr: Sequence[str]) -> bool:
    me = decode_cmp(label, idw)
    others = [decode_cmp(x, idw) for x in nbr]
    if me.own != my_id:
        return False
    children = sum(o.agg for o in others if (o.x if K > 0 else o.y) == my_id and o.own != my_id)
    if me.agg != hv + children:
        return False
    if K > 0:
        parent, depth = me.x, me.y
        if depth == 0:
            return parent == my_id and me.agg >= K
        return any(o.own == parent and o.y == depth - 1 for o in others)
    root, parent = me.x, me.y
    if any(o.x != root for o in others):
        return False
    if root == my_id:
        return parent == my_id and me.agg >= K
    return parent != my_id and any(o.own == parent for o in others)


def comparison_verify(view: LocalView, hv: int, K: int) -> bool:
    return comparison_check(view.inp.id, view.inp.id_bits, hv, K, view.label, view.nbr)


def comparison_bound(n: int, H: int) -> int:
    """Documented size constant for comparison labels."""
    return 8 + 3 * max(0, (n - 1).bit_length()) + H


def make_comparison_scheme(h: Callable[[LocalInput, str], int], k: int,
                           name: str = "comparison") -> Scheme:
    def hvals(cfg: ConfigurationGraph) -> Dict[int, int]:
        return {v: h(*cfg.state(v)) for v in cfg.graph.nodes}

    return Scheme(
        name=name,
        kind="comparison",
        universe=lambda cfg: True,
        prover=lambda cfg: comparison_labels(cfg.graph, hvals(cfg), k, strict=True),
        forger=lambda cfg: comparison_labels(cfg.graph, hvals(cfg), k, strict=False),
        verifier=lambda view: comparison_verify(view, h(view.inp, view.out), k),
        params={"k": k, "h": h},
    )


# ------------------------------------------------------- leader election

LE_ZERO, LE_ONE, LE_LEADER = "00", "01", "10"
LE_CODES = (LE_ZERO, LE_ONE, LE_LEADER)


def is_ring(g: Graph) -> bool:
    return g.n >= 3 and g.m == g.n and all(g.degree(v) == 2 for v in g.nodes)


def ring_order(g: Graph, start: int) -> List[int]:
    order = [start]
    prev, cur = start, g.neighbors(start)[0]
    while cur != start:
        order.append(cur)
        nxt = [u for u in g.neighbors(cur) if u != prev][0]
        prev, cur = cur, nxt
    return order


def le_colors(g: Graph, leader: int) -> Dict[int, str]:
    """Proper 3-colouring of an odd ring with ``leader`` as the only LEADER."""
    order = ring_order(g, leader)
    out = {leader: LE_LEADER}
    for i, v in enumerate(order[1:]):
        out[v] = LE_ZERO if i % 2 == 0 else LE_ONE
    return out


def le_check(is_leader: bool, label: str, nbr: Sequence[str]) -> bool:
    if label not in LE_CODES or any(x not in LE_CODES for x in nbr):
        return False
    if (label == LE_LEADER) != is_leader:
        return False
    if label == LE_LEADER and nbr[0] == nbr[1]:
        return False
    return label not in nbr


def two_candidate_le_scheme() -> Scheme:
    def universe(cfg: ConfigurationGraph) -> bool:
        g = cfg.graph
        return (is_ring(g) and g.n % 2 == 1
                and sum(g.attrs(v).candidate for v in g.nodes) == 2
                and all(len(cfg.output[v]) == 1 for v in g.nodes))

    def prover(cfg: ConfigurationGraph, strict: bool = True) -> LabelAssignment:
        g = cfg.graph
        leaders = [v for v in g.nodes if cfg.output[v] == "1"]
        if strict and not (len(leaders) == 1 and g.attrs(leaders[0]).candidate):
            raise ProverRefusal("not exactly one candidate leader")
        if not leaders:
            leaders = [min(g.nodes)]
        return le_colors(g, leaders[0])

    def verifier(view: LocalView) -> bool:
        lead = local_node_bit(view.inp, view.out)
        if lead and not view.inp.candidate:
            return False
        return le_check(lead, view.label, view.nbr)

    return Scheme(
        name="two-candidate-le",
        kind="feasibility",
        problem=Kind.LEADER.value,
        universe=universe,
        prover=prover,
        forger=lambda cfg: prover(cfg, strict=False),
        verifier=verifier,
    )


# ----------------------------------------------------------- MST (Borůvka)

def edge_key(w: int, a: int, b: int) -> Tuple[int, int, int]:
    return (w, min(a, b), max(a, b))


@dataclass(frozen=True)
class MstLabel:
    own: int
    root: int
    parent: int
    dist: int
    frags: Tuple[int, ...]                 # fragment ids of phases 1..P
    moes: Tuple[Tuple[int, int, int], ...]  # claims of phases 0..P-1

    @property
    def phases(self) -> int:
        return len(self.moes)

    def frag(self, i: int) -> int:
        return self.own if i == 0 else self.frags[i - 1]


def encode_mst(lab: MstLabel, idw: int, wb: int) -> str:
    out = [gamma(lab.phases + 1)]
    out += [uint(x, idw) for x in (lab.own, lab.root, lab.parent, lab.dist)]
    for i, (w, a, b) in enumerate(lab.moes):
        if i > 0:
            out.append(uint(lab.frags[i - 1], idw))
        out += [uint(w, wb), uint(a, idw), uint(b, idw)]
    if lab.phases:
        out.append(uint(lab.frags[-1], idw))
    return "".join(out)


def decode_mst(bits: str, idw: int, wb: int) -> MstLabel:
    r = BitReader(bits)
    P = r.gamma() - 1
    own, root, parent, dist = (r.uint(idw) for _ in range(4))
    frags: List[int] = []
    moes: List[Tuple[int, int, int]] = []
    for i in range(P):
        if i > 0:
            frags.append(r.uint(idw))
        moes.append((r.uint(wb), r.uint(idw), r.uint(idw)))
    if P:
        frags.append(r.uint(idw))
    r.expect_done()
    return MstLabel(own, root, parent, dist, tuple(frags), tuple(moes))


def _port_weight(inp: LocalInput, j: int) -> int:
    w = inp.ports[j].w
    return 1 if w is None else w


def mst_check(inp: LocalInput, me: MstLabel, nbrs: Sequence[Optional[MstLabel]],
              marked: Optional[Sequence[bool]] = None) -> bool:
    """Local MST check; ``None`` entries are non-participating neighbours."""
    if me.own != inp.id:
        return False
    part = [(j, o) for j, o in enumerate(nbrs) if o is not None]
    if any(o.root != me.root or o.phases != me.phases for _, o in part):
        return False
    is_root = me.own == me.root
    if is_root:
        if me.dist != 0 or me.parent != me.own:
            return False
    elif me.dist < 1 or not any(o.own == me.parent and o.dist == me.dist - 1 for _, o in part):
        return False
    tree = [False] * len(nbrs)
    for j, o in part:
        tree[j] = (not is_root and o.own == me.parent) or (o.own != o.root and o.parent == me.own)
    if marked is not None and list(marked) != tree:
        return False
    P = me.phases
    for i in range(P):
        for j, o in part:
            key = edge_key(_port_weight(inp, j), me.own, o.own)
            if o.frag(i) != me.frag(i):
                if key < me.moes[i]:
                    return False
            elif o.moes[i] != me.moes[i]:
                return False
    for j, o in part:
        if o.frag(P) != me.frag(P):
            return False
    for j, o in part:
        if not tree[j]:
            continue
        key = edge_key(_port_weight(inp, j), me.own, o.own)
        if not any(o.frag(i) != me.frag(i) and key in (me.moes[i], o.moes[i]) for i in range(P)):
            return False
    return True


def boruvka(g: Graph, nodes: Optional[Sequence[int]] = None):
    """Borůvka phases on the subgraph induced by ``nodes``.

    Returns ``(tree_edges, frag_history, moe_history)`` where history entry
    ``i`` maps a node to its phase-``i`` fragment id / claimed key.
    """
    members = set(g.nodes if nodes is None else nodes)
    frag = {v: v for v in members}
    tree = set()
    frag_hist = [dict(frag)]
    moe_hist = []
    while len(set(frag.values())) > 1:
        best: Dict[int, Tuple[Tuple[int, int, int], int, int]] = {}
        for e in g.edges:
            if e.u not in members or e.v not in members or frag[e.u] == frag[e.v]:
                continue
            key = edge_key(e.w or 1, e.u, e.v)
            for f in (frag[e.u], frag[e.v]):
                if f not in best or key < best[f][0]:
                    best[f] = (key, e.u, e.v)
        if len(best) < len(set(frag.values())):
            raise ValueError("participant subgraph is disconnected")
        moe_hist.append({v: best[frag[v]][0] for v in members})
        parent = {f: f for f in set(frag.values())}

        def find(x: int) -> int:
            while parent[x] != x:
                x = parent[x]
            return x

        for key, a, b in best.values():
            tree.add(g.edge_index(a, b))
            ra, rb = find(frag[a]), find(frag[b])
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
        groups: Dict[int, List[int]] = {}
        for v in members:
            groups.setdefault(find(frag[v]), []).append(v)
        for vs in groups.values():
            fid = min(vs)
            for v in vs:
                frag[v] = fid
        frag_hist.append(dict(frag))
    return frozenset(tree), frag_hist, moe_hist


def mst_labels(g: Graph, nodes: Optional[Sequence[int]] = None) -> Tuple[Dict[int, MstLabel], frozenset]:
    members = sorted(g.nodes if nodes is None else nodes)
    tree, frag_hist, moe_hist = boruvka(g, members)
    root = members[0]
    adj: Dict[int, List[int]] = {v: [] for v in members}
    for i in tree:
        e = g.edges[i]
        adj[e.u].append(e.v)
        adj[e.v].append(e.u)
    parent, dist = {root: root}, {root: 0}
    queue = deque([root])
    while queue:
        x = queue.popleft()
        for y in sorted(adj[x]):
            if y not in dist:
                parent[y], dist[y] = x, dist[x] + 1
                queue.append(y)
    P = len(moe_hist)
    labels = {}
    for v in members:
        labels[v] = MstLabel(
            own=v, root=root, parent=parent[v], dist=dist[v],
            frags=tuple(frag_hist[i][v] for i in range(1, P + 1)),
            moes=tuple(moe_hist[i][v] for i in range(P)),
        )
    return labels, tree


def mst_edges(g: Graph, nodes: Optional[Sequence[int]] = None) -> frozenset:
    return boruvka(g, nodes)[0]


def mst_certify_scheme() -> Scheme:
    """Output marks tree edges per port; accepts iff they form the MST."""

    def prover(cfg: ConfigurationGraph, strict: bool = True) -> LabelAssignment:
        g = cfg.graph
        labs, tree = mst_labels(g)
        if strict and decode_edge_set(cfg) != tree:
            raise ProverRefusal("output is not the minimum spanning tree")
        wb = max(1, g.W.bit_length())
        return {v: encode_mst(labs[v], g.id_bits, wb) for v in g.nodes}

    def verifier(view: LocalView) -> bool:
        inp = view.inp
        idw, wb = inp.id_bits, inp.wbits
        marked = local_port_bits(inp, view.out)
        me = decode_mst(view.label, idw, wb)
        nbrs = [decode_mst(x, idw, wb) for x in view.nbr]
        return mst_check(inp, me, nbrs, marked)

    return Scheme(
        name="mst",
        kind="feasibility",
        problem=Kind.MST.value,
        universe=lambda cfg: not cfg.graph.directed and all(
            len(cfg.output[v]) == cfg.graph.degree(v) for v in cfg.graph.nodes),
        prover=prover,
        forger=lambda cfg: prover(cfg, strict=False),
        verifier=verifier,
    )


# ------------------------------------------------------ Hamiltonian cycle

def hamiltonian_labels(g: Graph, cycle: frozenset, strict: bool = True) -> LabelAssignment:
    idw = g.id_bits
    root = min(g.nodes)
    if not is_hamiltonian_cycle(g, cycle):
        if strict:
            raise ProverRefusal("marked edges are not a Hamiltonian cycle")
        return {v: uint(root, idw) + uint(0, idw) for v in g.nodes}
    nxt: Dict[int, List[int]] = {v: [] for v in g.nodes}
    for i in cycle:
        e = g.edges[i]
        nxt[e.u].append(e.v)
        nxt[e.v].append(e.u)
    order = [root]
    prev, cur = root, min(nxt[root])
    while cur != root:
        order.append(cur)
        a, b = nxt[cur]
        prev, cur = cur, (b if a == prev else a)
    return {v: uint(root, idw) + uint(i, idw) for i, v in enumerate(order)}


def hamiltonian_check(inp: LocalInput, marked: Sequence[bool], label: str, nbr: Sequence[str]) -> bool:
    idw = inp.id_bits
    if len(label) != 2 * idw or any(len(x) != 2 * idw for x in nbr):
        return False
    root, pos = int(label[:idw], 2), int(label[idw:], 2)
    others = [(int(x[:idw], 2), int(x[idw:], 2)) for x in nbr]
    if any(r != root for r, _ in others):
        return False
    if (pos == 0) != (inp.id == root):
        return False
    ports = sorted(others[j][1] for j, m in enumerate(marked) if m)
    if len(ports) != 2:
        return False
    if pos == 0:
        return 1 in ports
    return ports == sorted([pos - 1, pos + 1]) or ports == sorted([pos - 1, 0])


def hamiltonian_feasibility_scheme() -> Scheme:
    def prover(cfg: ConfigurationGraph, strict: bool = True) -> LabelAssignment:
        return hamiltonian_labels(cfg.graph, decode_edge_set(cfg), strict)

    def verifier(view: LocalView) -> bool:
        return hamiltonian_check(view.inp, local_port_bits(view.inp, view.out), view.label, view.nbr)

    return Scheme(
        name="hamiltonian-feasibility",
        kind="feasibility",
        problem=Kind.TSP.value,
        universe=lambda cfg: not cfg.graph.directed and all(
            len(cfg.output[v]) == cfg.graph.degree(v) for v in cfg.graph.nodes),
        prover=prover,
        forger=lambda cfg: prover(cfg, strict=False),
        verifier=verifier,
    )


# ---------------------------------------------------- terminal-spanning tree

def _tt_encode(in_tree: bool, own: int, root: int, parent: int, dist: int, idw: int) -> str:
    return ("1" if in_tree else "0") + "".join(uint(x, idw) for x in (own, root, parent, dist))


def _tt_decode(bits: str, idw: int) -> Tuple[bool, int, int, int, int]:
    r = BitReader(bits)
    flag = r.take(1) == "1"
    vals = [r.uint(idw) for _ in range(4)]
    r.expect_done()
    return (flag, *vals)  # type: ignore[return-value]


def terminal_tree_labels(g: Graph, tree: frozenset, strict: bool = True) -> LabelAssignment:
    idw = g.id_bits
    ok = is_tree_spanning(g, tree, g.terminals)
    if strict and not ok:
        raise ProverRefusal("marked edges are not a tree spanning the terminals")
    adj = edge_adjacency(g, tree)
    members = set(adj) | (set(g.terminals) if not tree else set())
    root = min(members) if members else min(g.nodes)
    parent, dist = {root: root}, {root: 0}
    queue = deque([root])
    while queue:
        x = queue.popleft()
        for y in sorted(adj.get(x, ())):
            if y not in dist:
                parent[y], dist[y] = x, dist[x] + 1
                queue.append(y)
    out = {}
    for v in g.nodes:
        if v in dist and members:
            out[v] = _tt_encode(True, v, root, parent[v], dist[v], idw)
        else:
            out[v] = _tt_encode(False, v, root, v, 0, idw)
    return out


def terminal_tree_check(inp: LocalInput, marked: Sequence[bool], label: str, nbr: Sequence[str]) -> bool:
    idw = inp.id_bits
    in_tree, own, root, parent, dist = _tt_decode(label, idw)
    others = [_tt_decode(x, idw) for x in nbr]
    if own != inp.id or any(o[2] != root for o in others):
        return False
    if not in_tree:
        return not inp.terminal and not any(marked)
    if own == root:
        if dist != 0:
            return False
    elif dist < 1:
        return False
    expect = []
    found_parent = False
    for o in others:
        o_in, o_own, _, o_parent, o_dist = o
        is_parent = own != root and o_own == parent
        if is_parent:
            if not o_in or o_dist != dist - 1:
                return False
            found_parent = True
        is_child = o_in and o_own != root and o_parent == own
        expect.append(is_parent or is_child)
    if own != root and not found_parent:
        return False
    return list(marked) == expect


def terminal_tree_feasibility_scheme() -> Scheme:
    def prover(cfg: ConfigurationGraph, strict: bool = True) -> LabelAssignment:
        return terminal_tree_labels(cfg.graph, decode_edge_set(cfg), strict)

    def verifier(view: LocalView) -> bool:
        return terminal_tree_check(view.inp, local_port_bits(view.inp, view.out), view.label, view.nbr)

    return Scheme(
        name="terminal-tree-feasibility",
        kind="feasibility",
        problem=Kind.STEINER.value,
        universe=lambda cfg: not cfg.graph.directed and all(
            len(cfg.output[v]) == cfg.graph.degree(v) for v in cfg.graph.nodes),
        prover=prover,
        forger=lambda cfg: prover(cfg, strict=False),
        verifier=verifier,
    )
