"""Detours, bypasses, path projection, and path abstraction (boolean digraphs).

The detour at v deletes every arc touching v and inserts an arc from each
predecessor of v to each distinct successor, leaving v isolated; the bypass
additionally deletes v.  Paths between surviving vertices are preserved, and
the projection that deletes bypassed vertices from path words lands exactly on
the paths of the bypassed digraph.

Deleted vertices never cause renumbering: survivors keep their ids.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .digraph import (
    Digraph,
    classify_vertex,
    contract_blocks,
    delete_vertices,
)
from .partitions import PartialPartition, PartitionError


def detour(d: Digraph, v: int) -> Digraph:
    """Rewire around v: predecessors connect straight to successors.

    v stays in the digraph as an isolated vertex.  Idempotent.
    """
    d.require_boolean()
    d.require_vertex(v)
    nc = classify_vertex(d, v)
    arcs = {key: val for key, val in d.arcs.items() if key[0] != v and key[1] != v}
    one = d.semiring.one
    for x in nc.predecessors:
        for y in nc.successors:
            if x != y:
                arcs[(x, y)] = one
    return Digraph(d.vertices, arcs, d.semiring, dict(d.merged))


def bypass(d: Digraph, v: int) -> Digraph:
    """Detour at v, then delete v."""
    return delete_vertices(detour(d, v), [v])


def detour_set(d: Digraph, vertices: Iterable[int], debug_check_order: bool = False) -> Digraph:
    """Fold single-vertex detours over a set, in ascending vertex order.

    Single detours commute, so the order is only a convention;
    ``debug_check_order`` re-runs the fold in descending order and verifies
    both agree.
    """
    vs = sorted(set(vertices))
    for v in vs:
        d.require_vertex(v)
    out = d
    for v in vs:
        out = detour(out, v)
    if debug_check_order:
        alt = d
        for v in reversed(vs):
            alt = detour(alt, v)
        if alt != out:
            raise AssertionError("detour fold is order dependent; invariant broken")
    return out


def bypass_set(d: Digraph, vertices: Iterable[int], debug_check_order: bool = False) -> Digraph:
    vs = frozenset(vertices)
    return delete_vertices(detour_set(d, vs, debug_check_order), vs)


def naive_bypass(d: Digraph, vertices: Iterable[int]) -> Digraph:
    """The wrong single-shot construction, kept for differential testing.

    Removes all arcs touching the set, connects every external predecessor of
    the set to every distinct external successor, then deletes the set.  This
    manufactures spurious arcs whenever entry and exit points are not
    mutually reachable inside the set.
    """
    d.require_boolean()
    vs = frozenset(vertices)
    for v in vs:
        d.require_vertex(v)
    preds = {x for (x, y) in d.arcs if y in vs and x not in vs}
    succs = {y for (x, y) in d.arcs if x in vs and y not in vs}
    arcs = {k: val for k, val in d.arcs.items() if k[0] not in vs and k[1] not in vs}
    one = d.semiring.one
    for x in preds:
        for y in succs:
            if x != y:
                arcs[(x, y)] = one
    survivors = d.vertices - vs
    merged = {v: m for v, m in d.merged.items() if v in survivors}
    return Digraph(survivors, arcs, d.semiring, merged)


def project_path(word: Sequence[int], dropped: Iterable[int]) -> tuple[int, ...]:
    """Delete the dropped vertices from a path word.

    Adjacent duplicates created by a deletion are collapsed, so a closed walk
    whose interior is dropped degenerates to a single vertex.  The result may
    be empty.
    """
    vs = frozenset(dropped)
    out: list[int] = []
    for x in word:
        if x in vs:
            continue
        if out and out[-1] == x:
            continue
        out.append(x)
    return tuple(out)


def is_path_of(d: Digraph, word: Sequence[int]) -> bool:
    """Word is a simple path of d: distinct vertices, consecutive arcs."""
    if not word or len(set(word)) != len(word):
        return False
    if any(v not in d.vertices for v in word):
        return False
    return all(d.has_arc(x, y) for x, y in zip(word, word[1:]))


def is_walk_of(d: Digraph, word: Sequence[int]) -> bool:
    if not word or any(v not in d.vertices for v in word):
        return False
    return all(d.has_arc(x, y) for x, y in zip(word, word[1:]))


def path_abstract(d: Digraph, p: PartialPartition) -> Digraph:
    """Bypass everything outside the support, then merge the blocks.

    Bypasses and disjoint contractions commute, so contracting first and
    bypassing after yields the same digraph.
    """
    d.require_boolean()
    if not p.support <= d.vertices:
        raise PartitionError("partition support must lie inside the vertex set")
    outside = d.vertices - p.support
    return contract_blocks(bypass_set(d, outside), list(p.blocks))
