"""Acceptance criteria, one test per criterion, each printing a PASS/FAIL line.

Run with `pytest -s tests/test_acceptance.py` to see the per-criterion lines.
"""

import os
import random
import subprocess
import sys
import time
from contextlib import contextmanager
from fractions import Fraction

import importlib.resources as resources

import numpy as np
import pytest

from pathabs import (
    COUNTING,
    Coloring,
    Digraph,
    PartialPartition,
    bypass_set,
    contract_blocks,
    detour,
    detours_commute,
    double_detour,
    enumerate_paths,
    graph_sources,
    graph_targets,
    naive_bypass,
    partition_from_labels,
    path_abstract,
    project_path,
    sample_dtcn,
)
from pathabs.checks import SUITES
from pathabs.formats import parse_digraph, parse_labels
from pathabs.random import (
    GnpModel,
    arc_survival_iterate,
    arc_survival_iterate_exact,
    expected_arcs,
    giant_scc_fraction,
    largest_scc_fraction_mc,
    monte_carlo_abstraction,
    renormalization_grid,
)
from pathabs.temporal import DTCN, Contact, build_temporal_digraph, dtcn_detour
from pathabs.vabstract import ColoredDigraph, vertex_abstract

from conftest import random_digraph, random_multigraph


@contextmanager
def criterion(number: int, limit_s: float, description: str):
    start = time.perf_counter()
    try:
        yield
    except Exception:
        elapsed = time.perf_counter() - start
        print(f"criterion {number:2d}: FAIL ({elapsed:.2f}s) {description}")
        raise
    elapsed = time.perf_counter() - start
    print(f"criterion {number:2d}: PASS ({elapsed:.2f}s) {description}")
    assert elapsed < limit_s, f"criterion {number} took {elapsed:.2f}s, limit {limit_s}s"


def _fixture(name: str) -> str:
    return resources.files("pathabs.data").joinpath(name).read_text(encoding="utf-8")


FIG_DAG8 = Digraph.build(
    8, [(1, 4), (3, 5), (4, 7), (5, 1), (5, 6), (6, 8), (7, 2), (7, 8), (1, 7), (3, 8), (5, 2)]
)
DAG8_BYPASS = {(1, 2), (1, 4), (1, 8), (3, 1), (3, 2), (3, 6), (3, 8), (4, 2), (4, 8), (6, 8)}
FIDI_SIZES = (4, 3, 2, 2, 1, 2, 1, 2, 2, 3, 2)


def test_criterion_1_color_table():
    with criterion(1, 1.0, "vertex abstraction of the 4-path example matches the table"):
        cd = ColoredDigraph.from_coloring(
            Digraph.build(4, [(1, 2), (2, 3), (3, 4)]), Coloring([1, 2, 1, 3])
        )
        table = {
            frozenset(): (set(), set()),
            frozenset({1}): ({1}, set()),
            frozenset({2}): ({2}, set()),
            frozenset({3}): ({3}, set()),
            frozenset({1, 2}): ({1, 2}, {(1, 2), (2, 1)}),
            frozenset({1, 3}): ({1, 3}, {(1, 3)}),
            frozenset({2, 3}): ({2, 3}, set()),
            frozenset({1, 2, 3}): ({1, 2, 3}, {(1, 2), (2, 1), (1, 3)}),
        }
        for kept, (colors, color_arcs) in table.items():
            out = vertex_abstract(cd, kept)
            got_colors = set(out.colors.values())
            got_arcs = {(out.colors[x], out.colors[y]) for (x, y) in out.digraph.arcs}
            assert (got_colors, got_arcs) == (colors, color_arcs), kept


def test_criterion_2_bypass_vs_naive():
    with criterion(2, 1.0, "set bypass of the 8-vertex example; naive adds 3 spurious arcs"):
        out = bypass_set(FIG_DAG8, {5, 7})
        assert set(out.arcs) == DAG8_BYPASS
        naive = naive_bypass(FIG_DAG8, {5, 7})
        assert set(naive.arcs) == DAG8_BYPASS | {(1, 6), (4, 1), (4, 6)}


def test_criterion_3_path_correspondence():
    with criterion(3, 1.0, "the 7 source-target paths project onto the bypass's 7 paths"):
        original = enumerate_paths(FIG_DAG8, {3}, {2, 8})
        assert len(original.paths) == 7 and not original.truncated
        bypassed = bypass_set(FIG_DAG8, {5, 7})
        images = {project_path(p, {5, 7}) for p in original.paths}
        target = enumerate_paths(bypassed, graph_sources(bypassed), graph_targets(bypassed))
        assert len(target.paths) == 7 and not target.truncated
        assert images == set(target.paths)


def test_criterion_4_boolean_commutation_suites():
    with criterion(4, 30.0, "1000 random digraphs: detour/detour and detour/contraction commute"):
        rng = random.Random(404)
        for _ in range(1000):
            n = rng.randint(3, 8)
            d = random_digraph(rng, n, rng.uniform(0.15, 0.5))
            for v in range(1, n + 1):
                for w in range(v + 1, n + 1):
                    assert detour(detour(d, v), w) == detour(detour(d, w), v)
            for _ in range(5):
                u, v, w = rng.sample(range(1, n + 1), 3)
                left = contract_blocks(detour(d, u), [{v, w}])
                right = detour(contract_blocks(d, [{v, w}]), u)
                assert left == right


def test_criterion_5_weighted_commutation():
    with criterion(5, 30.0, "commutation predicate agrees with double detours; 4 vs 2 example"):
        multi = Digraph.build(4, {(1, 2): 1, (1, 4): 1, (3, 1): 2, (4, 1): 1}, COUNTING)
        assert double_detour(multi, 1, 4).value(3, 2) == 4
        assert double_detour(multi, 4, 1).value(3, 2) == 2
        report = detours_commute(multi, 1, 4)
        assert not report.commute and report.witness == (3, 2)
        rng = random.Random(505)
        for _ in range(1000):
            n = rng.randint(3, 6)
            d = random_multigraph(rng, n, rng.uniform(0.25, 0.55))
            for v in range(1, n + 1):
                for w in range(v + 1, n + 1):
                    predicted = detours_commute(d, v, w).commute
                    direct = double_detour(d, v, w) == double_detour(d, w, v)
                    assert predicted == direct, (d, v, w)


def test_criterion_6_fidi_quantitative():
    with criterion(6, 5.0, "street fixture: 40 arcs, 27 after abstraction, expected-arc constants"):
        fidi = parse_digraph(_fixture("fidi.edges"))
        assert fidi.arc_count() == 40
        coloring = parse_labels(_fixture("fidi.labels"))
        pi = partition_from_labels(coloring, set(range(1, 13)) - {5})
        assert tuple(sorted((len(b) for b in pi.blocks), reverse=True)) == tuple(
            sorted(FIDI_SIZES, reverse=True)
        )
        abstracted = path_abstract(fidi, pi)
        assert abstracted.arc_count() == 27
        # the 27 arcs also match the reference drawing class-for-class
        color_of = {
            v: {coloring.labels[m - 1] for m in abstracted.members_of(v)}.pop()
            for v in abstracted.vertices
        }
        got = {(color_of[x], color_of[y]) for (x, y) in abstracted.arcs}
        expected_color_arcs = {
            (2, 1), (7, 1), (4, 2), (2, 3), (4, 3), (6, 3), (11, 3), (3, 4),
            (8, 6), (10, 6), (2, 7), (4, 7), (6, 7), (7, 8), (9, 8), (1, 9),
            (9, 10), (12, 10), (2, 11), (4, 11), (6, 11), (12, 11), (2, 12),
            (4, 12), (6, 12), (10, 12), (11, 12),
        }
        assert got == expected_color_arcs
        # exact-rational oracle fixes the composition count behind the
        # published constants: three applications, not four
        third = float(arc_survival_iterate_exact(Fraction(5, 100), 3))
        assert abs(third - 0.0578) < 5e-5
        assert expected_arcs(0.05, 28, FIDI_SIZES, survival_iterations=3) == pytest.approx(
            25.9635, abs=0.01
        )
        assert expected_arcs(0.0529, 28, FIDI_SIZES, survival_iterations=3) == pytest.approx(
            27.4466, abs=0.01
        )


def test_criterion_7_random_scaling():
    with criterion(7, 120.0, "bypass frequency at n=300 within 3 per-trial sigma of prediction"):
        n, drop, trials = 300, 30, 200
        model = GnpModel(n, 0.02)
        pi = PartialPartition(n, [{v} for v in range(1, n - drop + 1)])
        out = monte_carlo_abstraction(model, pi, trials, seed=707)
        pred = arc_survival_iterate(0.02, drop)
        gap = abs(out.mean - pred)
        print(
            f"  n=300 scaling: mean={out.mean:.6f} pred={pred:.6f} "
            f"gap={gap:.2e} sigma={out.stddev:.2e}"
        )
        assert gap <= 3 * out.stddev


@pytest.mark.skipif(
    not os.environ.get("PATHABS_SLOW"), reason="set PATHABS_SLOW=1 for the n=1000 reproduction"
)
def test_criterion_7_slow_reference_modes():
    with criterion(7, 600.0, "n=1000 reproduction: empirical vs predicted frequency modes"):
        from pathabs import _kernels
        from pathabs.random import trial_rng

        n, k, trials, p = 1000, 50, 1000, 0.01
        drop = np.arange(n - k, n)
        emp, pred = [], []
        for t in range(trials):
            rng = trial_rng(70707, t)
            adj = _kernels.sample_adjacency(n, p, rng)
            p_hat = adj.sum() / (n * (n - 1))
            _, sub = _kernels.bypass_dense(adj, drop)
            m = n - k
            emp.append(sub.sum() / (m * (m - 1)))
            pred.append(arc_survival_iterate(float(p_hat), k))
        emp, pred = np.asarray(emp), np.asarray(pred)

        def kde_mode(xs):
            bw = 1.06 * xs.std(ddof=1) * len(xs) ** -0.2
            grid = np.linspace(xs.min() - 3 * bw, xs.max() + 3 * bw, 2001)
            dens = np.exp(-0.5 * ((grid[:, None] - xs[None, :]) / bw) ** 2).sum(axis=1)
            return grid[int(np.argmax(dens))], bw

        emp_mode, emp_bw = kde_mode(emp)
        pred_mode, pred_bw = kde_mode(pred)
        print(
            f"  modes: empirical={emp_mode:.5f} (reported 0.01834), "
        )
        print(f"  prediction={pred_mode:.5f} (reported 0.01894)")
        assert abs(emp_mode - 0.01834) <= 3 * max(emp_bw, pred_bw)
        assert abs(pred_mode - 0.01894) <= 3 * max(emp_bw, pred_bw)
        assert abs(emp.mean() - pred.mean()) <= 3 * emp.std(ddof=1)


def test_criterion_8_giant_component_and_renormalization():
    with criterion(8, 120.0, "giant-component fraction within 5%; grid sign patterns"):
        pred = giant_scc_fraction(2.0)
        emp = largest_scc_fraction_mc(2000, 2.0, trials=20, seed=808)
        print(f"  giant component: predicted={pred:.4f} empirical={emp:.4f}")
        assert abs(emp - pred) / pred <= 0.05
        for n in (100, 1000):
            for c in (1.01, 1.03):
                plain = renormalization_grid(n, c, False, n - 1)
                signs = [value > 0 for _, value in plain]
                crossing = signs.index(False)
                print(f"  renorm n={n} c={c}: zero contour at N={crossing}")
                assert signs[0], "grid must start positive"
                assert not any(signs[crossing:]), "nonpositive tail must be contiguous"
                if n == 1000:
                    assert crossing >= 0.99 * n, f"contour at {crossing}/{n} is not near n"
                else:
                    assert crossing >= n / 3
                logged = renormalization_grid(n, c, True, n - 2)
                assert all(value > 0 for _, value in logged)


def test_criterion_9_temporal_suite():
    with criterion(9, 60.0, "temporal detours, noncommutativity, size identities, reduction"):
        handoff = DTCN.build(5, [(1, 4, 1), (5, 4, 2), (2, 5, 3), (4, 3, 4)])
        assert dtcn_detour(handoff, {4, 5}).triples() == [(1, 3, 4.0)]
        seq_45 = dtcn_detour(dtcn_detour(handoff, {4}), {5})
        seq_54 = dtcn_detour(dtcn_detour(handoff, {5}), {4})
        assert seq_45.triples() == [(1, 3, 4.0), (2, 3, 4.0)]
        assert seq_54.triples() == [(1, 3, 4.0)]

        for t in range(500):
            d = sample_dtcn(7, 0.25, "uniform", 9000 + t, max_retries=5)
            tg = build_temporal_digraph(d)
            assert tg.vertex_count <= 2 * d.n + 2 * len(d.contacts)
            assert tg.arc_count == tg.vertex_count - d.n + len(d.contacts)

        rng = random.Random(909)
        for t in range(200):
            n = rng.randint(3, 7)
            base = sample_dtcn(n, 0.4, "uniform", 9900 + t, max_retries=5)
            frozen = DTCN(
                base.vertices,
                frozenset(Contact(c.source, c.target, 0.25) for c in base.contacts),
            )
            drop = set(rng.sample(sorted(frozen.vertices), rng.randint(1, n - 1)))
            pairs = {(c.source, c.target) for c in dtcn_detour(frozen, drop).contacts}
            plain = bypass_set(
                Digraph.build(n, {(c.source, c.target): 1 for c in frozen.contacts}), drop
            )
            assert pairs == set(plain.arcs)


def test_criterion_10_check_subcommand():
    with criterion(10, 240.0, "`pathabs check` runs headlessly and exits 0"):
        proc = subprocess.run(
            [sys.executable, "-m", "pathabs.cli", "check"],
            capture_output=True,
            text=True,
            timeout=230,
        )
        assert proc.returncode == 0, proc.stdout + proc.stderr
        assert "FAIL" not in proc.stdout
        assert proc.stdout.count("PASS") == len(SUITES)
