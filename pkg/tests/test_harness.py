import math

import pytest
from hypothesis import given, settings, strategies as st

from bipcycles.cycle_pipeline import PipelineConfig, find_all_even_cycles
from bipcycles.graph_core import BipartiteGraph, L, R
from bipcycles.harness import (
    CSV_COLUMNS,
    AdversaryStrategy,
    ExperimentReport,
    GridCell,
    Strategy,
    adversary_delete,
    brute_force_cycle_oracle,
    cycle_counts,
    run_experiment,
    run_trial,
)
from bipcycles.random_model import sample_gnnp, split_seed

from conftest import cycle_graph, small_graphs, star_graph


# -- adversaries -------------------------------------------------------------------


@pytest.mark.parametrize("kind", list(Strategy))
def test_budget_zero_unchanged(kind, k33):
    assert adversary_delete(k33, AdversaryStrategy(kind, 0), seed=1) == k33


def test_star_kill_isolates_vertex(k33):
    g = adversary_delete(k33, AdversaryStrategy(Strategy.STAR_KILL, 3), seed=0)
    assert g.m == 6
    assert g.degree(L(0)) == 0
    assert all(g.degree(v) > 0 for v in g.vertices() if v != L(0))


def test_star_kill_picks_max_degree():
    g = star_graph(4)
    g2 = BipartiteGraph(g.n, sorted(g.edges) + [(1, 0)])
    out = adversary_delete(g2, AdversaryStrategy("StarKill", 2), seed=0)
    assert out.degree(L(0)) == 2 and out.has_edge(L(1), R(0))


@pytest.mark.parametrize("kind", list(Strategy))
def test_delete_everything(kind, k33):
    g = adversary_delete(k33, AdversaryStrategy(kind, k33.m), seed=5)
    assert g.m == 0 and g.n == 3


@pytest.mark.parametrize("kind", list(Strategy))
def test_budget_too_large(kind, k33):
    with pytest.raises(ValueError):
        adversary_delete(k33, AdversaryStrategy(kind, k33.m + 1), seed=0)
    with pytest.raises(ValueError):
        AdversaryStrategy(kind, -1)


@pytest.mark.parametrize("seed", range(10))
def test_short_cycle_breaker_targets_c4(seed):
    # one C4 (L0 R0 L1 R1) plus a C4-free tail: the first deletion must hit the C4
    c4 = {(0, 0), (0, 1), (1, 0), (1, 1)}
    g = BipartiteGraph(4, sorted(c4) + [(1, 2), (2, 2), (2, 3), (3, 3)])
    out = adversary_delete(g, AdversaryStrategy("ShortCycleBreaker", 1), seed=seed)
    assert g.edges - out.edges <= c4
    assert 4 not in brute_force_cycle_oracle(out)


def test_short_cycle_breaker_falls_back_to_random():
    g = cycle_graph(4)  # C8, no 4-cycle
    out = adversary_delete(g, AdversaryStrategy("ShortCycleBreaker", 3), seed=1)
    assert out.m == 5


@settings(max_examples=100, deadline=None)
@given(small_graphs(max_n=5), st.sampled_from(list(Strategy)), st.data())
def test_adversary_properties(g, kind, data):
    budget = data.draw(st.integers(min_value=0, max_value=g.m))
    seed = data.draw(st.integers(0, 2**32))
    out = adversary_delete(g, AdversaryStrategy(kind, budget), seed)
    assert out.m == g.m - budget
    assert out.edges <= g.edges
    assert out == adversary_delete(g, AdversaryStrategy(kind, budget), seed)


# -- oracle ----------------------------------------------------------------------------


def test_oracle_k33(k33):
    assert brute_force_cycle_oracle(k33) == {4, 6}
    assert cycle_counts(k33) == {4: 9, 6: 6}


def test_oracle_counts_k44():
    # 4-cycles C(4,2)^2 = 36; 6-cycles C(4,3)^2 * 3! * 3! / 6 = 96; Hamilton 4! 4! / 8 = 72
    assert cycle_counts(BipartiteGraph.complete(4)) == {4: 36, 6: 96, 8: 72}


def test_oracle_cycle_and_forest():
    assert brute_force_cycle_oracle(cycle_graph(4)) == {8}
    assert brute_force_cycle_oracle(star_graph(5)) == set()
    assert brute_force_cycle_oracle(BipartiteGraph(3, [(0, 0), (1, 0), (1, 1), (2, 1)])) == set()


def test_oracle_too_large():
    with pytest.raises(ValueError):
        brute_force_cycle_oracle(BipartiteGraph(7, []))


@settings(max_examples=100, deadline=None)
@given(small_graphs(max_n=5))
def test_oracle_early_exit_matches_counts(g):
    assert brute_force_cycle_oracle(g) == set(cycle_counts(g))


# -- experiments ---------------------------------------------------------------------------


def test_grid_cell_validation():
    with pytest.raises(ValueError):
        GridCell(n=10, eps=0.4, strategy="RandomDelete", trials=1)
    with pytest.raises(ValueError):
        GridCell(n=10, eps=0.4, strategy="RandomDelete", trials=1, C=1.0, p=0.5)
    with pytest.raises(ValueError):
        GridCell(n=10, eps=0.4, strategy="RandomDelete", trials=0, p=0.5)
    with pytest.raises(ValueError):
        GridCell(n=10, eps=0.4, strategy="Nope", trials=1, p=0.5)


def test_target_edges():
    cell = GridCell(n=900, eps=0.4, strategy="RandomDelete", trials=1, C=8.0)
    params = cell.params(0)
    assert cell.target_edges(params) == math.floor(1.4 * 900**2 * params.p / 2) + 1


def small_grid():
    return [
        GridCell(n=6, eps=0.4, strategy="RandomDelete", trials=3, p=1.0, edges_after=34, t_max_override=6),
        GridCell(n=30, eps=0.3, strategy="StarKill", trials=2, p=0.5, t_max_override=8),
        GridCell(n=30, eps=0.3, strategy="ShortCycleBreaker", trials=2, p=0.5, t_max_override=8),
    ]


def test_complete_graph_tiny_budget_no_misses():
    report = run_experiment(small_grid()[:1], master_seed=7)
    assert len(report.rows) == 3
    assert report.miss_free(0) == 3 and report.with_misses(0) == 0
    assert all(r.edges_after == 34 for r in report.rows)


def test_csv_layout():
    report = run_experiment(small_grid(), master_seed=7)
    text = report.to_csv()
    lines = text.split("\n")
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert text.endswith("\n") and "\r" not in text
    assert len(lines) == 1 + 7 + 1
    first = lines[1].split(",")
    assert first[1] == "6" and first[4] == "RandomDelete" and first[5] == "34" and first[6] == "4-6"
    assert all(row.split(",")[-1] == "0" for row in lines[1:-1])


def test_csv_byte_identical(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    run_experiment(small_grid(), master_seed=11).write_csv(a)
    run_experiment(small_grid(), master_seed=11).write_csv(b)
    assert a.read_bytes() == b.read_bytes()
    assert run_experiment(small_grid(), master_seed=12).to_csv() != a.read_text()


def test_workers_do_not_change_csv():
    serial = run_experiment(small_grid(), master_seed=3).to_csv()
    parallel = run_experiment(small_grid(), master_seed=3, workers=2).to_csv()
    assert serial == parallel


def test_edges_after_is_recount():
    grid = small_grid()
    report = run_experiment(grid, master_seed=5)
    for row in report.rows:
        cell = grid[row.cell]
        assert row.seed == split_seed(5, row.cell, row.trial)
        params = cell.params(row.seed)
        g = sample_gnnp(params)
        budget = max(g.m - cell.target_edges(params), 0)
        gp = adversary_delete(g, AdversaryStrategy(cell.strategy, budget), split_seed(row.seed, 1))
        assert row.edges_after == gp.m
        cat = find_all_even_cycles(gp, PipelineConfig(cell.eps, t_max_override=cell.t_max_override), params)
        assert list(row.misses) == cat.missed_lengths()


def test_timing_flag_records_runtime():
    row = run_trial(small_grid()[1], 0, 0, master_seed=1, timing=True)
    assert row.runtime_ms >= 0
    assert run_trial(small_grid()[1], 0, 0, master_seed=1).runtime_ms == 0


def test_report_counts():
    rows = run_experiment(small_grid(), master_seed=9).rows
    report = ExperimentReport(rows)
    assert report.miss_free() + report.with_misses() == len(rows)


def test_oracle_agreement_small_trials():
    cell = GridCell(n=6, eps=0.4, strategy="RandomDelete", trials=10, p=0.8, edges_after=16,
                    t_max_override=8, core_degree=1, strict_bridge=False)
    for k in range(cell.trials):
        seed = split_seed(99, 0, k)
        params = cell.params(seed)
        g = sample_gnnp(params)
        gp = adversary_delete(g, AdversaryStrategy(cell.strategy, max(g.m - 16, 0)), split_seed(seed, 1))
        config = PipelineConfig(0.4, t_max_override=8, core_degree=1, strict_bridge=False)
        found = set(find_all_even_cycles(gp, config, params).cycles)
        assert found <= brute_force_cycle_oracle(gp)
