"""Certified domination graph over a corpus: construction, audit,
transitive closure, longest chains, and chain-length bounds.

Edges use certificates only; Unknown pairs never contribute, so every
reported chain is a lower bound on the true partial order.  Building the
graph evaluates all ordered pairs (optionally in parallel) and then runs
a sequential deterministic reduction, so serialization is byte-identical
across runs and worker counts.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

from .domination import Certificate, certificate_search, evaluate_full
from .knotbase import Corpus, CorpusError, KnotRecord
from .laurent import is_prime_power


@dataclass(frozen=True)
class Edge:
    src: str
    dst: str
    certificate: Certificate


@dataclass(frozen=True)
class DominationGraph:
    """Directed acyclic graph of certified dominations (dominator ->
    dominated) with provenance per edge and an audit log of consistency
    findings (expected empty)."""

    nodes: tuple[str, ...]
    edges: tuple[Edge, ...]
    audit_log: tuple[str, ...]

    def successors(self, name: str) -> list[str]:
        return sorted(e.dst for e in self.edges if e.src == name)

    def edge(self, src: str, dst: str) -> Edge | None:
        for e in self.edges:
            if e.src == src and e.dst == dst:
                return e
        return None

    def to_json_dict(self) -> dict:
        return {
            "nodes": list(self.nodes),
            "edges": [
                {
                    "from": e.src,
                    "to": e.dst,
                    "certificate": e.certificate.rule_id,
                    "anchor": e.certificate.anchor,
                    "witnesses": list(e.certificate.witnesses),
                }
                for e in self.edges
            ],
            "audit_log": list(self.audit_log),
        }


@dataclass(frozen=True)
class ChainBound:
    """An upper bound on certified chains out of a knot.  free_ghat bounds
    the total strict length; alternating_degree bounds only how many
    alternating knots a chain can contain."""

    value: int
    rule: str  # "free_ghat" | "alternating_degree"
    scope: str  # "total_length" | "alternating_count"


def build_graph(corpus: Corpus, workers: int = 1) -> DominationGraph:
    """Evaluate all ordered pairs, keep certified edges, close under
    transitivity, and audit certificates against obstructions."""
    names = corpus.names()
    records = {name: corpus.get(name) for name in names}
    pairs = [(a, b) for a in names for b in names if a != b]

    def scan(pair: tuple[str, str]):
        return evaluate_full(records[pair[0]], records[pair[1]])

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = dict(zip(pairs, pool.map(scan, pairs)))
    else:
        results = {pair: scan(pair) for pair in pairs}

    audit: list[str] = []
    direct: dict[tuple[str, str], Certificate] = {}
    blocked: set[tuple[str, str]] = set()
    for pair in pairs:
        fired, rigidity, _, certificate = results[pair]
        negative = [r.rule_id for r in fired] + [r.rule_id for r in rigidity]
        if negative:
            blocked.add(pair)
        if certificate is not None and negative:
            audit.append(
                f"conflict: {pair[0]} -> {pair[1]} certified by {certificate.rule_id} "
                f"but obstructed by {sorted(negative)}"
            )
            continue
        if certificate is not None:
            direct[pair] = certificate

    # Second pass: connected-sum certificates may pair summands through
    # edges certified in the first pass (k1#k2 >= k1'#k2').
    changed = True
    while changed:
        changed = False
        known = frozenset(direct)
        for pair in pairs:
            if pair in direct or pair in blocked:
                continue
            certificate = certificate_search(records[pair[0]], records[pair[1]], known)
            if certificate is not None:
                direct[pair] = certificate
                changed = True

    # Transitive closure with canonical witness chains: shortest, then
    # lexicographically least, over the direct edges.
    succ: dict[str, list[str]] = {name: [] for name in names}
    for src, dst in direct:
        succ[src].append(dst)
    for name in names:
        succ[name].sort()

    closure: dict[tuple[str, str], Certificate] = dict(direct)
    for src in names:
        chains = _canonical_chains(src, succ)
        for dst, chain in chains.items():
            pair = (src, dst)
            if pair in closure:
                continue
            if pair in blocked:
                audit.append(
                    f"conflict: {src} -> {dst} reachable through {list(chain)} but obstructed"
                )
                continue
            closure[pair] = Certificate("C5_transitive", chain)

    cycle = _find_cycle(names, succ)
    if cycle is not None:
        audit.append(f"cycle among certified edges: {cycle}")

    edges = tuple(
        Edge(src, dst, closure[(src, dst)]) for src, dst in sorted(closure)
    )
    return DominationGraph(tuple(names), edges, tuple(audit))


def _canonical_chains(src: str, succ: dict[str, list[str]]) -> dict[str, tuple[str, ...]]:
    """For every node reachable from src in two or more direct steps, the
    canonical witness chain: shortest, ties broken lexicographically.
    Relaxation to a fixed point; a strictly better (length, chain) pair is
    accepted, so cycles cannot loop."""
    best: dict[str, tuple[int, tuple[str, ...]]] = {src: (0, (src,))}
    changed = True
    while changed:
        changed = False
        for node in sorted(best):
            length, chain = best[node]
            for nxt in succ[node]:
                candidate = (length + 1, chain + (nxt,))
                if nxt not in best or candidate < best[nxt]:
                    best[nxt] = candidate
                    changed = True
    return {
        dst: chain for dst, (length, chain) in best.items() if length >= 2
    }


def _find_cycle(names: tuple[str, ...] | list[str], succ: dict[str, list[str]]) -> list[str] | None:
    WHITE, GRAY, BLACK = 0, 1, 2
    color = {name: WHITE for name in names}
    stack: list[str] = []

    def visit(node: str) -> list[str] | None:
        color[node] = GRAY
        stack.append(node)
        for nxt in succ[node]:
            if color[nxt] == GRAY:
                return stack[stack.index(nxt):] + [nxt]
            if color[nxt] == WHITE:
                found = visit(nxt)
                if found:
                    return found
        stack.pop()
        color[node] = BLACK
        return None

    for name in names:
        if color[name] == WHITE:
            found = visit(name)
            if found:
                return found
    return None


def longest_chain(graph: DominationGraph, start: str) -> list[str]:
    """A maximum-length strict chain of certified edges from start; ties
    broken by lexicographic order of the name sequence."""
    if start not in graph.nodes:
        raise CorpusError(f"unknown knot name {start!r}")
    succ: dict[str, list[str]] = {name: [] for name in graph.nodes}
    for e in graph.edges:
        succ[e.src].append(e.dst)
    for name in succ:
        succ[name].sort()

    visiting: set[str] = set()

    @lru_cache(maxsize=None)
    def best_from(node: str) -> tuple[int, tuple[str, ...]]:
        if node in visiting:
            raise CorpusError("certified edges contain a cycle; no longest chain")
        visiting.add(node)
        best = (0, (node,))
        for nxt in succ[node]:
            length, tail = best_from(nxt)
            candidate = (length + 1, (node,) + tail)
            if candidate[0] > best[0] or (
                candidate[0] == best[0] and candidate[1] < best[1]
            ):
                best = candidate
        visiting.discard(node)
        return best

    return list(best_from(start)[1])


def iter_chains(graph: DominationGraph, start: str):
    """All strict certified chains out of start (including the trivial
    one-node chain), in DFS order."""
    succ: dict[str, list[str]] = {name: [] for name in graph.nodes}
    for e in graph.edges:
        succ[e.src].append(e.dst)
    for name in succ:
        succ[name].sort()

    def walk(path: list[str]):
        yield tuple(path)
        for nxt in succ[path[-1]]:
            if nxt not in path:
                yield from walk(path + [nxt])

    yield from walk([start])


def chain_length_bound(record: KnotRecord) -> list[ChainBound]:
    """Upper bounds on certified chains out of a record: the maximal
    incompressible genus bounds total length for free knots, and the
    Alexander degree bounds the alternating-knot count when the leading
    coefficient is a prime power."""
    if not record.enriched:
        raise CorpusError(f"{record.name}: record is not enriched")
    bounds: list[ChainBound] = []
    if record.flags.free is True and record.ghat is not None:
        bounds.append(ChainBound(record.ghat, "free_ghat", "total_length"))
    if (
        record.flags.alternating is True
        and record.delta is not None
        and not record.delta.is_zero()
        and is_prime_power(abs(record.delta.leading_coefficient))
    ):
        bounds.append(
            ChainBound(record.delta.max_degree, "alternating_degree", "alternating_count")
        )
    return bounds
