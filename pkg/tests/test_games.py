import pytest

from alteration_lab.copies import enumerate_copies
from alteration_lab.density import minimal_balanced_core
from alteration_lab.games import (
    AllBluePainter,
    AllRedPainter,
    DenseFirstProposer,
    FixedDecider,
    GameTranscript,
    PumpBuilder,
    RandomBuilder,
    RandomDecider,
    RandomLegalProposer,
    RuleViolation,
    ThresholdPainter,
    builder_final_graphs,
    coupled_rps_check,
    rps_final_graph,
    run_online_ramsey,
    run_rps,
)
from alteration_lab.graphs import Graph, complete_graph, cycle_graph
from alteration_lab.randomness import RandomSource, derive_labels

from oracles import brute_has_clique

K3 = complete_graph(3)
C4 = cycle_graph(4)


def test_rps_always_accept_on_three_vertices_gives_path():
    t = run_rps(3, K3, RandomLegalProposer(), FixedDecider(True), RandomSource(1))
    g = rps_final_graph(t)
    assert t.outcome == "exhausted"
    assert g.num_edges == 2
    assert sorted(g.degree(v) for v in range(3)) == [1, 1, 2]


def test_rps_always_reject_proposes_every_pair():
    t = run_rps(6, K3, RandomLegalProposer(), FixedDecider(False), RandomSource(2))
    assert len(t.turns) == 15
    assert not t.final_edges
    assert all(turn.action == "reject" for turn in t.turns)


def test_rps_final_graphs_pattern_free_over_seeds():
    for seed in range(50):
        t = run_rps(14, K3, RandomLegalProposer(), RandomDecider(0.4), RandomSource(seed))
        g = rps_final_graph(t)
        if g.num_edges:
            assert len(enumerate_copies(g, K3)) == 0
        assert Graph(14, t.final_edges) == g


def test_rps_replay_bit_exact():
    a = run_rps(11, C4, RandomLegalProposer(), RandomDecider(0.5), RandomSource(77), game_index=3)
    b = run_rps(11, C4, RandomLegalProposer(), RandomDecider(0.5), RandomSource(77), game_index=3)
    assert a == b
    assert isinstance(a, GameTranscript)


def test_decider_blindness_across_proposers():
    a = run_rps(10, K3, RandomLegalProposer(), RandomDecider(0.4), RandomSource(5), game_index=2)
    b = run_rps(10, K3, DenseFirstProposer(), RandomDecider(0.4), RandomSource(5), game_index=2)
    da = [t.action for t in a.turns]
    db = [t.action for t in b.turns]
    m = min(len(da), len(db))
    assert da[:m] == db[:m]


def test_rps_rule_violation_on_bad_proposer():
    class LyingProposer:
        def session(self, state, stream):
            class Session:
                def propose(self, state):
                    return None  # claims exhaustion immediately

            return Session()

    with pytest.raises(RuleViolation):
        run_rps(5, K3, LyingProposer(), FixedDecider(False), RandomSource(1))


def test_rps_rule_violation_on_repeated_pair():
    class StubbornProposer:
        def session(self, state, stream):
            class Session:
                def propose(self, state):
                    return (0, 1)

            return Session()

    with pytest.raises(RuleViolation):
        run_rps(5, K3, StubbornProposer(), FixedDecider(False), RandomSource(1))


def test_coupling_trivial_p0():
    labels = derive_labels(8, RandomSource(3))
    report = coupled_rps_check(8, K3, RandomLegalProposer(), 0.0, labels, RandomSource(3))
    assert report.ok
    assert report.random_graph.num_edges == 0
    assert report.game_graph.num_edges == 0


def test_coupling_p1_on_k4():
    labels = derive_labels(4, RandomSource(4))
    report = coupled_rps_check(4, K3, DenseFirstProposer(), 1.0, labels, RandomSource(4))
    assert report.ok
    assert report.random_graph == complete_graph(4)
    assert len(enumerate_copies(report.game_graph, K3)) == 0
    # every dropped edge is witnessed by a triangle of the random graph
    assert all(copy is not None for _, copy in report.difference_witnesses)


def test_coupling_holds_over_seeded_batch():
    for seed in range(60):
        n = 8 + seed % 10
        pattern = K3 if seed % 2 == 0 else C4
        labels = derive_labels(n, RandomSource(seed))
        report = coupled_rps_check(
            n, pattern, RandomLegalProposer(), 0.2 + (seed % 5) * 0.1, labels, RandomSource(seed)
        )
        assert report.subset_ok and report.difference_covered_ok


def test_builder_zero_turn_cap():
    t = run_online_ramsey(K3, 5, RandomBuilder(6), ThresholdPainter(0.5, K3), 0, RandomSource(1), pool_cap=6)
    assert t.outcome == "turn-cap"
    assert not t.turns


def test_builder_duplicate_edge_violation():
    class RepeatBuilder:
        def session(self, state, stream):
            class Session:
                def place(self, state):
                    return (0, 1)

            return Session()

    with pytest.raises(RuleViolation):
        run_online_ramsey(K3, 5, RepeatBuilder(), AllBluePainter(), 5, RandomSource(1), pool_cap=4)


def test_threshold_painter_never_builds_red_core_even_at_p1():
    # Builder densifies inside the high-degree set; the painter's revert
    # rule keeps the red graph core-free even when every attempt is red.
    t = run_online_ramsey(
        K3, 9, PumpBuilder(9), ThresholdPainter(1.0, K3), 80, RandomSource(9), pool_cap=40
    )
    red, _ = builder_final_graphs(t)
    assert t.outcome != "red-pattern"
    if red.num_edges:
        assert len(enumerate_copies(red, K3)) == 0


def test_threshold_painter_uses_minimal_core_for_unbalanced_pattern():
    paw = Graph(4, [(0, 1), (0, 2), (1, 2), (2, 3)])
    core = minimal_balanced_core(paw)
    assert core == K3
    t = run_online_ramsey(
        paw, 9, PumpBuilder(9), ThresholdPainter(0.8, core), 70, RandomSource(11), pool_cap=40
    )
    red, _ = builder_final_graphs(t)
    if red.num_edges:
        assert len(enumerate_copies(red, core)) == 0


def test_all_blue_painter_loses_to_pump_builder():
    t = run_online_ramsey(K3, 4, PumpBuilder(4), AllBluePainter(), 100, RandomSource(2), pool_cap=20)
    assert t.outcome == "blue-clique"


def test_all_red_painter_loses_on_red_pattern():
    t = run_online_ramsey(K3, 30, RandomBuilder(8), AllRedPainter(), 100, RandomSource(2), pool_cap=32)
    assert t.outcome == "red-pattern"


def test_blue_clique_detection_matches_brute_force():
    for seed in range(12):
        k = 4 + seed % 2  # targets 4 and 5
        t = run_online_ramsey(
            K3, k, RandomBuilder(k + 3), AllBluePainter(), 60, RandomSource(seed), pool_cap=k + 3
        )
        n = t.param("pool_cap")
        adjacency = [set() for _ in range(n)]
        for i, turn in enumerate(t.turns):
            u, v = turn.pair
            adjacency[u].add(v)
            adjacency[v].add(u)
            found = brute_has_clique(adjacency, range(n), k)
            if i < len(t.turns) - 1:
                assert not found  # engine must stop at the first clique
        final_found = brute_has_clique(adjacency, range(n), k)
        assert final_found == (t.outcome == "blue-clique")


def test_blue_clique_vertices_sit_in_high_degree_set():
    # A blue k-clique forces degree >= k-1 > threshold on its vertices, so
    # winning cliques can only appear inside the high-degree set.
    from itertools import combinations

    for seed in range(8):
        k = 4
        t = run_online_ramsey(
            K3, k, RandomBuilder(7), AllBluePainter(), 40, RandomSource(seed), pool_cap=7
        )
        if t.outcome != "blue-clique":
            continue
        n = t.param("pool_cap")
        threshold = t.param("degree_threshold")
        degrees = [0] * n
        blue_adj = [set() for _ in range(n)]
        for turn in t.turns:
            u, v = turn.pair
            degrees[u] += 1
            degrees[v] += 1
            if turn.action == "blue":
                blue_adj[u].add(v)
                blue_adj[v].add(u)
        for clique in combinations(range(n), k):
            if all(b in blue_adj[a] for a, b in combinations(clique, 2)):
                assert all(degrees[v] >= max(threshold, k - 1) for v in clique)


def test_builder_replay_bit_exact():
    args = dict(turn_cap=40, game_index=6, pool_cap=30)
    a = run_online_ramsey(K3, 7, RandomBuilder(12), ThresholdPainter(0.5, K3), rng=RandomSource(13), **args)
    b = run_online_ramsey(K3, 7, RandomBuilder(12), ThresholdPainter(0.5, K3), rng=RandomSource(13), **args)
    assert a == b


def test_pump_builder_raises_degree_threshold():
    t = run_online_ramsey(
        K3, 9, PumpBuilder(9), AllBluePainter(), 200, RandomSource(3), pool_cap=40
    )
    # after the circulant phase every target has degree >= 2 = threshold
    degrees = [0] * 40
    for turn in t.turns:
        u, v = turn.pair
        degrees[u] += 1
        degrees[v] += 1
    assert all(degrees[v] >= 2 for v in range(18))


def test_transcript_param_lookup():
    t = run_rps(4, K3, RandomLegalProposer(), FixedDecider(False), RandomSource(1))
    assert t.param("n") == 4
    with pytest.raises(KeyError):
        t.param("missing")
