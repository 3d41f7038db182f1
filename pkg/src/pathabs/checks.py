"""Headless property suites behind the `check` subcommand.

Each suite draws seeded random instances and verifies a structural law; one
PASS/FAIL line per suite.  Counts are sized to finish in seconds; the pytest
acceptance suite runs the full-scale versions.
"""

from __future__ import annotations

import random as _stdrandom
import sys

import numpy as np

from . import _kernels
from .digraph import (
    Digraph,
    classify_vertex,
    contract_blocks,
    enumerate_paths,
    is_acyclic,
    reachability,
    strongly_connected_components,
    transitive_reduction_dag,
)
from .pabstract import bypass_set, detour, detour_set, is_walk_of, project_path
from .partitions import (
    all_partial_partitions,
    all_partitions,
    canonicalize,
    complete_partial,
    drop_element,
    refines,
)
from .semirings import COUNTING, REGISTRY, check_semiring_laws
from .temporal import build_temporal_digraph, dtcn_contract, dtcn_detour, sample_dtcn
from .weighted import detours_commute, double_detour, weighted_detour


class CheckFailure(AssertionError):
    pass


def _require(condition: bool, detail: str):
    if not condition:
        raise CheckFailure(detail)


def _random_digraph(rng: _stdrandom.Random, n: int, p: float, semiring=None) -> Digraph:
    arcs = {}
    for x in range(1, n + 1):
        for y in range(1, n + 1):
            if x != y and rng.random() < p:
                if semiring is COUNTING:
                    arcs[(x, y)] = rng.randint(1, 3)
                else:
                    arcs[(x, y)] = 1
    return Digraph.build(n, arcs, semiring or REGISTRY["boolean"])


def check_laws(seed: int):
    for name, spec in sorted(REGISTRY.items()):
        report = check_semiring_laws(spec, 200, seed)
        _require(report.all_pass, f"semiring {name} fails laws: {report}")


def check_contraction_order(seed: int):
    rng = _stdrandom.Random(seed)
    for _ in range(150):
        n = rng.randint(4, 8)
        d = _random_digraph(rng, n, 0.4)
        vs = rng.sample(range(1, n + 1), 4)
        b1, b2 = set(vs[:2]), set(vs[2:])
        one = contract_blocks(contract_blocks(d, [b1]), [b2])
        both = contract_blocks(d, [b1, b2])
        _require(one == both, f"contraction order changed the result on {d}")


def check_classification(seed: int):
    rng = _stdrandom.Random(seed)
    for _ in range(200):
        d = _random_digraph(rng, rng.randint(1, 10), rng.random())
        for v in d.vertices:
            nc = classify_vertex(d, v)
            parts = [nc.minus, nc.plusminus, nc.plus, nc.zero]
            union = frozenset().union(*parts) | {v}
            _require(union == d.vertices, "classification misses vertices")
            total = sum(len(p) for p in parts)
            _require(total == len(d.vertices) - 1, "classification overlaps")


def check_transitive_reduction(seed: int):
    rng = _stdrandom.Random(seed)
    for _ in range(100):
        d = _random_dag(rng, rng.randint(2, 9), 0.4)
        r = transitive_reduction_dag(d)
        _require(reachability(d) == reachability(r), "reduction changed reachability")


def _random_dag(rng: _stdrandom.Random, n: int, p: float) -> Digraph:
    order = list(range(1, n + 1))
    rng.shuffle(order)
    arcs = {}
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                arcs[(order[i], order[j])] = 1
    return Digraph.build(n, arcs)


def check_detour_commutation(seed: int):
    rng = _stdrandom.Random(seed)
    for _ in range(150):
        n = rng.randint(3, 8)
        d = _random_digraph(rng, n, 0.35)
        v, w = rng.sample(range(1, n + 1), 2)
        _require(
            detour(detour(d, v), w) == detour(detour(d, w), v),
            f"boolean detours at {v},{w} failed to commute",
        )


def check_detour_contract_commutation(seed: int):
    rng = _stdrandom.Random(seed)
    for _ in range(150):
        n = rng.randint(3, 8)
        d = _random_digraph(rng, n, 0.35)
        u, v, w = rng.sample(range(1, n + 1), 3)
        left = contract_blocks(detour(d, u), [{v, w}])
        right = detour(contract_blocks(d, [{v, w}]), u)
        _require(left == right, f"detour/contract at {u},{{{v},{w}}} disagree")


def check_weighted_predicate(seed: int):
    rng = _stdrandom.Random(seed)
    for _ in range(150):
        n = rng.randint(3, 6)
        d = _random_digraph(rng, n, 0.4, COUNTING)
        v, w = rng.sample(range(1, n + 1), 2)
        report = detours_commute(d, v, w)
        direct = double_detour(d, v, w) == double_detour(d, w, v)
        _require(report.commute == direct, f"commutation predicate wrong at {v},{w} on {d}")


def check_boolean_specialization(seed: int):
    rng = _stdrandom.Random(seed)
    for _ in range(100):
        n = rng.randint(2, 8)
        d = _random_digraph(rng, n, 0.4)
        v = rng.randint(1, n)
        _require(weighted_detour(d, v) == detour(d, v), "weighted/boolean detour mismatch")


def check_galois(seed: int):
    del seed  # exhaustive
    n = 4
    partials = list(all_partial_partitions(n))
    fulls = list(all_partitions(n + 1))
    for sigma in partials:
        completed = complete_partial(sigma)
        for tau in fulls:
            _require(
                refines(sigma, drop_element(tau)) == refines(completed, tau),
                f"adjunction fails at {sigma} vs {tau}",
            )


def check_canonical_idempotent(seed: int):
    rng = _stdrandom.Random(seed)
    from .partitions import Coloring

    for _ in range(300):
        n = rng.randint(1, 9)
        c = Coloring([rng.randint(0, 6) for _ in range(n)])
        once = canonicalize(c)
        _require(canonicalize(once) == once, "canonical form not idempotent")


def check_path_projection(seed: int):
    rng = _stdrandom.Random(seed)
    for _ in range(60):
        n = rng.randint(3, 7)
        d = _random_dag(rng, n, 0.45)
        drop = frozenset(rng.sample(range(1, n + 1), rng.randint(1, n - 1)))
        keep = d.vertices - drop
        if not keep:
            continue
        b = bypass_set(d, drop)
        full = enumerate_paths(d, d.vertices, d.vertices)
        for path in full.paths:
            image = project_path(path, drop)
            if len(image) >= 2:
                _require(is_walk_of(b, image), f"projected {path} not a walk of the bypass")


def check_kernels_agree(seed: int):
    rng = np.random.default_rng(seed)
    for _ in range(100):
        n = int(rng.integers(2, 10))
        a = _kernels.sample_adjacency(n, float(rng.random()), rng)
        k = int(rng.integers(1, n + 1))
        drop = rng.choice(n, size=k, replace=False)
        keep1, b1 = _kernels.bypass_dense(a, drop)
        keep2, b2 = _kernels.bypass_closure(a, drop)
        _require((keep1 == keep2).all() and (b1 == b2).all(), "kernel lanes disagree")


def check_temporal_sizes(seed: int):
    for t in range(100):
        d = sample_dtcn(6, 0.25, "uniform", seed + t, max_retries=5)
        tg = build_temporal_digraph(d)
        fiber_total = tg.vertex_count
        _require(fiber_total <= 2 * d.n + 2 * len(d.contacts), "layer count bound broken")
        _require(
            tg.arc_count == fiber_total - d.n + len(d.contacts),
            "layered arc-count identity broken",
        )


def check_temporal_commutation(seed: int):
    rng = _stdrandom.Random(seed)
    for t in range(50):
        d = sample_dtcn(7, 0.2, "uniform", seed + t, max_retries=5)
        vs = rng.sample(sorted(d.vertices), 4)
        drop, block = {vs[0], vs[1]}, {vs[2], vs[3]}
        left = dtcn_contract(dtcn_detour(d, drop), [block])
        right = dtcn_detour(dtcn_contract(d, [block]), drop)
        _require(left == right, "temporal detour/contract do not commute")


def check_scc_acyclic(seed: int):
    rng = _stdrandom.Random(seed)
    for _ in range(100):
        d = _random_digraph(rng, rng.randint(1, 9), 0.3)
        comps = strongly_connected_components(d)
        union = frozenset().union(*comps) if comps else frozenset()
        _require(union == d.vertices, "component union misses vertices")
        _require(is_acyclic(d) == all(len(c) == 1 for c in comps), "acyclicity mismatch")
        drop = set(rng.sample(sorted(d.vertices), min(2, len(d.vertices))))
        if is_acyclic(d):
            _require(is_acyclic(detour_set(d, drop)), "detour broke acyclicity")


SUITES = [
    ("semiring-laws", check_laws),
    ("contraction-order", check_contraction_order),
    ("vertex-classification", check_classification),
    ("scc-acyclicity", check_scc_acyclic),
    ("transitive-reduction", check_transitive_reduction),
    ("detour-commutation", check_detour_commutation),
    ("detour-contract-commutation", check_detour_contract_commutation),
    ("weighted-commutation-predicate", check_weighted_predicate),
    ("boolean-specialization", check_boolean_specialization),
    ("partition-adjunction", check_galois),
    ("canonical-idempotence", check_canonical_idempotent),
    ("path-projection", check_path_projection),
    ("kernel-lanes", check_kernels_agree),
    ("temporal-size-identities", check_temporal_sizes),
    ("temporal-commutation", check_temporal_commutation),
]


def run_checks(seed: int = 0, out=sys.stdout) -> list[str]:
    failures = []
    for name, suite in SUITES:
        try:
            suite(seed)
        except CheckFailure as exc:
            failures.append(name)
            print(f"FAIL {name}: {exc}", file=out)
        else:
            print(f"PASS {name}", file=out)
    return failures
