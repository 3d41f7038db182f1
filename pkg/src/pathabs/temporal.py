"""Directed temporal contact networks and their detours and contractions.

A contact network is a finite set of (source, target, time) triples.  Its
layered (temporal) digraph has one vertex per (vertex, fiber time) pair,
temporal arcs chaining consecutive times at a vertex, and one spatial arc per
contact; time-respecting paths of the network are ordinary paths there.

Detouring a vertex set bypasses all of its layers inside the layered digraph
and reads each surviving cross-vertex arc back as a contact stamped with the
later of its two layer times.  Sentinel times are the IEEE infinities; contact
times must be finite and sentinels are never serialized.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .digraph import Digraph
from .partitions import PartialPartition, PartitionError
from .random import trial_rng

NEG_INF = float("-inf")
POS_INF = float("inf")


class TemporalError(ValueError):
    pass


class TemporalInvariantError(RuntimeError):
    """An impossible layered configuration; indicates a bug, not bad input."""


@dataclass(frozen=True, order=True)
class Contact:
    source: int
    target: int
    time: float

    def __post_init__(self):
        if self.source == self.target:
            raise TemporalError(f"contact at {self.time} loops on vertex {self.source}")
        if not math.isfinite(self.time):
            raise TemporalError("contact times must be finite")


@dataclass(frozen=True)
class DTCN:
    """A vertex set plus a finite set of distinct timed contacts.

    Detour results may legitimately have no contacts left; parsers and
    samplers reject empty networks at the interface instead.
    """

    vertices: frozenset[int]
    contacts: frozenset[Contact]

    def __post_init__(self):
        for c in self.contacts:
            if c.source not in self.vertices or c.target not in self.vertices:
                raise TemporalError(f"contact {c} leaves the vertex set")

    @staticmethod
    def build(n: int, triples: Iterable[tuple[int, int, float]]) -> "DTCN":
        contacts = frozenset(Contact(int(s), int(t), float(tau)) for s, t, tau in triples)
        return DTCN(frozenset(range(1, n + 1)), contacts)

    @property
    def n(self) -> int:
        return len(self.vertices)

    def triples(self) -> list[tuple[int, int, float]]:
        return sorted((c.source, c.target, c.time) for c in self.contacts)


def temporal_fiber(d: DTCN, v: int) -> tuple[float, ...]:
    """Times at which v touches a contact, wrapped in -inf/+inf sentinels."""
    if v not in d.vertices:
        raise TemporalError(f"vertex {v} is not in the network")
    times = {c.time for c in d.contacts if c.source == v or c.target == v}
    return (NEG_INF, *sorted(times), POS_INF)


@dataclass(frozen=True)
class TemporalDigraph:
    """The layered digraph of a contact network."""

    layers: tuple[tuple[int, float], ...]
    spatial_arcs: frozenset[tuple[tuple[int, float], tuple[int, float]]]
    temporal_arcs: frozenset[tuple[tuple[int, float], tuple[int, float]]]

    @property
    def vertex_count(self) -> int:
        return len(self.layers)

    @property
    def arc_count(self) -> int:
        return len(self.spatial_arcs) + len(self.temporal_arcs)

    def to_digraph(self) -> tuple[Digraph, dict[tuple[int, float], int]]:
        """Boolean digraph over layer indices (1-based, sorted layer order)."""
        index = {layer: i + 1 for i, layer in enumerate(self.layers)}
        arcs = {}
        for a, b in self.spatial_arcs | self.temporal_arcs:
            arcs[(index[a], index[b])] = 1
        return Digraph.build(len(self.layers), arcs), index


def build_temporal_digraph(d: DTCN) -> TemporalDigraph:
    fibers = {v: temporal_fiber(d, v) for v in d.vertices}
    layers = tuple(sorted((v, t) for v in d.vertices for t in fibers[v]))
    temporal = set()
    for v in sorted(d.vertices):
        fiber = fibers[v]
        for a, b in zip(fiber, fiber[1:]):
            temporal.add(((v, a), (v, b)))
    spatial = {((c.source, c.time), (c.target, c.time)) for c in d.contacts}
    return TemporalDigraph(layers, frozenset(spatial), frozenset(temporal))


def _detour_triples(d: DTCN, drop: frozenset[int]) -> set[tuple[int, int, float]]:
    """Cross-vertex arcs of the layered digraph after bypassing drop's layers.

    Survivor-to-survivor spatial arcs stay; a new arc appears from layer
    (x, t1) to (y, t2) whenever a path runs from (x, t1) through dropped
    layers only to (y, t2).  Each arc becomes the triple (x, y, later time).
    """
    fibers = {u: temporal_fiber(d, u) for u in drop}
    chain_next: dict[tuple[int, float], tuple[int, float]] = {}
    for u in drop:
        fiber = fibers[u]
        for a, b in zip(fiber, fiber[1:]):
            chain_next[(u, a)] = (u, b)
    inner_spatial: dict[tuple[int, float], list[tuple[int, float]]] = {}
    entries: dict[tuple[int, float], list[tuple[int, float]]] = {}
    exits: dict[tuple[int, float], list[tuple[int, float]]] = {}
    triples: set[tuple[int, int, float]] = set()
    for c in d.contacts:
        s_in = c.source in drop
        t_in = c.target in drop
        if not s_in and not t_in:
            triples.add((c.source, c.target, c.time))
        elif s_in and t_in:
            inner_spatial.setdefault((c.source, c.time), []).append((c.target, c.time))
        elif not s_in and t_in:
            entries.setdefault((c.target, c.time), []).append((c.source, c.time))
        else:
            exits.setdefault((c.source, c.time), []).append((c.target, c.time))

    reach_cache: dict[tuple[int, float], set[tuple[int, float]]] = {}

    def exits_reachable(start: tuple[int, float]) -> set[tuple[int, float]]:
        if start in reach_cache:
            return reach_cache[start]
        seen = {start}
        frontier = [start]
        found: set[tuple[int, float]] = set()
        while frontier:
            node = frontier.pop()
            found.update(exits.get(node, ()))
            for nxt in inner_spatial.get(node, ()):
                if nxt not in seen:
                    seen.add(nxt)
                    frontier.append(nxt)
            nxt = chain_next.get(node)
            if nxt is not None and nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
        reach_cache[start] = found
        return found

    for entry_layer, outside_sources in entries.items():
        for exit_layer in exits_reachable(entry_layer):
            y, t2 = exit_layer
            for x, t1 in outside_sources:
                if x == y:
                    continue
                stamp = max(t1, t2)
                if stamp == NEG_INF:
                    raise TemporalInvariantError("spatial arc stamped with -inf")
                triples.add((x, y, stamp))
    return triples


def dtcn_detour(d: DTCN, drop: Iterable[int]) -> DTCN:
    """Bypass every layer of the dropped vertices; read arcs back as contacts.

    The whole set is bypassed in a single pass over the layered digraph;
    folding single-vertex detours is a different (noncommuting) operation, so
    sequencing matters to callers who do it anyway.
    """
    drop_set = frozenset(drop)
    extra = drop_set - d.vertices
    if extra:
        raise TemporalError(f"vertices {sorted(extra)} are not in the network")
    if not drop_set:
        return d
    triples = _detour_triples(d, drop_set)
    survivors = d.vertices - drop_set
    return DTCN(survivors, frozenset(Contact(s, t, tau) for s, t, tau in triples))


def naive_dtcn_detour(d: DTCN, v: int) -> DTCN:
    """The tempting single-vertex rule, kept only for differential tests.

    Splices (j, v, t1) with (v, k, t2) into (j, k, t2) whenever t1 <= t2.
    Already fails to match the layered construction on sets of size two.
    """
    if v not in d.vertices:
        raise TemporalError(f"vertex {v} is not in the network")
    kept = {c for c in d.contacts if c.source != v and c.target != v}
    into = [c for c in d.contacts if c.target == v]
    outof = [c for c in d.contacts if c.source == v]
    for a in into:
        for b in outof:
            if a.source != b.target and a.time <= b.time:
                kept.add(Contact(a.source, b.target, b.time))
    return DTCN(d.vertices - {v}, frozenset(kept))


def dtcn_contract(d: DTCN, blocks: Sequence[Iterable[int]]) -> DTCN:
    """Re-address contacts to block representatives; internal contacts drop."""
    norm = []
    seen: set[int] = set()
    for b in blocks:
        fs = frozenset(int(x) for x in b)
        if not fs:
            raise TemporalError("blocks must be nonempty")
        if not fs <= d.vertices:
            raise TemporalError(f"block {sorted(fs)} leaves the vertex set")
        if fs & seen:
            raise TemporalError("blocks must be pairwise disjoint")
        seen |= fs
        norm.append(fs)
    vmap = {v: v for v in d.vertices}
    for fs in norm:
        rep = min(fs)
        for m in fs:
            vmap[m] = rep
    contacts = set()
    for c in d.contacts:
        s, t = vmap[c.source], vmap[c.target]
        if s != t:
            contacts.add(Contact(s, t, c.time))
    return DTCN(frozenset(vmap.values()), frozenset(contacts))


def dtcn_path_abstract(d: DTCN, p: PartialPartition) -> DTCN:
    """Detour everything outside the support, then contract the blocks."""
    if not p.support <= d.vertices:
        raise PartitionError("partition support must lie inside the vertex set")
    outside = d.vertices - p.support
    return dtcn_contract(dtcn_detour(d, outside), list(p.blocks))


def sample_dtcn(
    n: int, p: float, mode: str, seed: int, max_retries: int = 0
) -> DTCN:
    """Random contact network on 1..n with times in [0, 1].

    ``uniform`` draws each ordered pair with probability p, one contact each;
    ``poisson`` draws a Poisson(p) count of contacts per ordered pair.  Both
    have p*n*(n-1) expected contacts.  An empty draw raises unless retries
    remain.
    """
    if not 0.0 <= p <= 1.0:
        raise TemporalError("p must lie in [0, 1]")
    if mode not in ("uniform", "poisson"):
        raise TemporalError(f"unknown mode {mode!r}; use uniform or poisson")
    for attempt in range(max_retries + 1):
        rng = trial_rng(seed, attempt)
        triples: list[tuple[int, int, float]] = []
        if mode == "uniform":
            mask = rng.random((n, n)) < p
            times = rng.random((n, n))
            np.fill_diagonal(mask, False)
            for x, y in zip(*np.nonzero(mask)):
                triples.append((int(x) + 1, int(y) + 1, float(times[x, y])))
        else:
            counts = rng.poisson(p, size=(n, n))
            np.fill_diagonal(counts, 0)
            for x, y in zip(*np.nonzero(counts)):
                for t in rng.random(int(counts[x, y])):
                    triples.append((int(x) + 1, int(y) + 1, float(t)))
        if triples:
            return DTCN.build(n, triples)
    raise TemporalError(f"sampled an empty contact network (p={p}); raise max_retries or p")


def temporal_path_probability(p: float, length: int) -> float:
    """Chance that a fixed path is realized time-coherently: p^len / len!.

    Arc presence contributes p per hop; conditional on presence, the uniform
    times arrive in ascending order with probability 1/len!.
    """
    if length < 1:
        raise TemporalError("path length must be >= 1")
    if not 0.0 <= p <= 1.0:
        raise TemporalError("p must lie in [0, 1]")
    return p**length / math.factorial(length)


def lint_equal_time_chains(d: DTCN) -> list[tuple[Contact, Contact]]:
    """Contact pairs chained head-to-tail at exactly the same instant.

    The layered digraph treats such chains as traversable; files that rely on
    simultaneous hops deserve a warning rather than silent acceptance.
    """
    by_source: dict[tuple[int, float], list[Contact]] = {}
    for c in d.contacts:
        by_source.setdefault((c.source, c.time), []).append(c)
    flagged = []
    for c in d.contacts:
        for nxt in by_source.get((c.target, c.time), ()):
            flagged.append((c, nxt))
    flagged.sort(key=lambda pair: (pair[0].source, pair[0].target, pair[0].time,
                                   pair[1].source, pair[1].target))
    return flagged
