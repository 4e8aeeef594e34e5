"""Plain-Python reference implementations used as test oracles.

None of these touch the interpreter or SPARQL; they work on edge lists.
"""

from __future__ import annotations

import hashlib
from collections import Counter, defaultdict, deque


def nodes_of(edges):
    return sorted({x for e in edges for x in e})


def pagerank_iterations(edges, iterations=10, damping=0.85):
    """Rank vectors after each of ``iterations`` steps.

    Classic formulation: teleport (1-d)/n plus the rank of dangling nodes
    spread evenly. Nodes are those touching an edge.
    """
    nodes = nodes_of(edges)
    n = len(nodes)
    out = defaultdict(list)
    for u, v in edges:
        out[u].append(v)
    rank = {v: 1.0 / n for v in nodes}
    history = []
    for _ in range(iterations):
        dangling = sum(rank[v] for v in nodes if not out[v])
        new = {v: (1 - damping) / n + damping * dangling / n for v in nodes}
        for u in nodes:
            for v in out[u]:
                new[v] += damping * rank[u] / len(out[u])
        rank = new
        history.append(rank)
    return history


def reachable(edges, seeds, blocked=frozenset()):
    """Nodes reachable from ``seeds`` without entering ``blocked`` nodes."""
    succ = defaultdict(list)
    for u, v in edges:
        succ[u].append(v)
    seen = set(seeds)
    queue = deque(seeds)
    while queue:
        u = queue.popleft()
        for v in succ[u]:
            if v not in seen and v not in blocked:
                seen.add(v)
                queue.append(v)
    return seen


def bfs_depths(edges, source):
    succ = defaultdict(list)
    for u, v in edges:
        succ[u].append(v)
    depth = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in succ[u]:
            if v not in depth:
                depth[v] = depth[u] + 1
                queue.append(v)
    return depth


def components(edges):
    """Union-find over undirected edges; returns node -> least member."""
    parent = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        a, b = find(u), find(v)
        if a != b:
            parent[max(a, b)] = min(a, b)
    return {x: find(x) for x in nodes_of(edges)}


def local_clustering(edges):
    edge_set = set(edges)
    nbrs = defaultdict(set)
    for u, v in edges:
        if u != v:
            nbrs[u].add(v)
            nbrs[v].add(u)
    result = {}
    for v in nodes_of(edges):
        ns = nbrs[v]
        d = len(ns)
        if d < 2:
            result[v] = 0.0
            continue
        links = sum(1 for a in ns for b in ns if a != b and (a, b) in edge_set)
        result[v] = links / (d * (d - 1))
    return result


def label_propagation(edges, iterations):
    """Synchronous propagation; both edge directions vote, least label wins ties."""
    voters = defaultdict(list)
    for u, v in edges:
        voters[v].append(u)
        voters[u].append(v)
    label = {v: v for v in nodes_of(edges)}
    for _ in range(iterations):
        new = {}
        for v in label:
            counts = Counter(label[u] for u in voters[v])
            top = max(counts.values())
            new[v] = min(lab for lab, c in counts.items() if c == top)
        label = new
    return label


def colour_refinement(nodes, edges, labels, rounds):
    """Classic 1-WL on the undirected simple view; returns the partition per round."""
    nbrs = defaultdict(set)
    for u, v in edges:
        nbrs[u].add(v)
        nbrs[v].add(u)
    colour = dict(labels)
    partitions = [_partition(colour)]
    for _ in range(rounds):
        signature = {
            v: (colour[v], tuple(sorted(colour[u] for u in nbrs[v]))) for v in nodes
        }
        palette = {sig: hashlib.sha1(repr(sig).encode()).hexdigest() for sig in set(signature.values())}
        colour = {v: palette[signature[v]] for v in nodes}
        partitions.append(_partition(colour))
    return partitions


def _partition(colour):
    classes = defaultdict(set)
    for v, c in colour.items():
        classes[c].add(v)
    return {frozenset(c) for c in classes.values()}


def run_machine(transitions, initial, final, word, max_steps=10_000):
    """Tape-and-head simulation. True accept, False reject, None undecided."""
    delta = {(q, a): (q2, b, d) for q, a, q2, b, d in transitions}
    tape = list(word) or ["B"]
    head, state = 0, initial
    for _ in range(max_steps):
        key = (state, tape[head])
        if key not in delta:
            return state == final
        state, tape[head], d = delta[key]
        if d == "right":
            head += 1
            if head == len(tape):
                tape.append("B")
        else:
            if head == 0:
                tape.insert(0, "B")
            else:
                head -= 1
    return None
