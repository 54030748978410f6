"""Exhaustive solvers and graph exports.

The retrograde solver is itself an oracle for the closed forms, so it
gets its own independent cross-check here: a naive fixpoint iteration
written directly against the rules API, with no shared code beyond
``legal_moves``/``apply_move``.
"""

import json
from math import inf

import pytest

from hanoiduel import (
    BudgetExceeded,
    Ending,
    GameConfig,
    Move,
    Weights,
    apply_move,
    bounded_scoring_search,
    build_graph,
    export_graph,
    initial_state,
    is_terminal,
    legal_moves,
    shortest_forced_win,
    solve_normal,
)

from helpers import applicable_endings


def naive_radius(cfg):
    """Forced-end distance from the initial state by plain iteration."""
    init = initial_state(cfg)
    seen = {init}
    frontier = [init]
    succ = {}
    while frontier:
        nxt = []
        for s in frontier:
            if is_terminal(s, cfg):
                succ[s] = None
                continue
            outs = [apply_move(s, m, cfg) for m in legal_moves(s, cfg)]
            succ[s] = outs
            for t in outs:
                if t not in seen:
                    seen.add(t)
                    nxt.append(t)
        frontier = nxt
    radius = {s: inf for s in seen}
    for _ in range(len(seen) + 2):
        changed = False
        for s in seen:
            outs = succ[s]
            if outs is None:
                continue
            best = inf
            for t in outs:
                if succ[t] is None:
                    cand = 1
                else:
                    replies = succ[t]
                    if not replies:
                        cand = 1  # opponent stuck, cannot answer
                    elif any(succ[u] is None for u in replies):
                        cand = inf  # opponent escapes by finishing
                    elif all(radius[u] < inf for u in replies):
                        cand = 2 + max(radius[u] for u in replies)
                    else:
                        cand = inf
                best = min(best, cand)
            if best < radius[s]:
                radius[s] = best
                changed = True
        if not changed:
            break
    return radius[init]


class TestGraph:
    def test_state_counts(self):
        cfg = GameConfig(disks=2, pegs=3, ending=Ending.TO_PEG)
        g = build_graph(cfg)
        assert g.total_states == 108
        assert g.initial == 0 or g.initial < 108
        assert 0 < g.reachable_count < 108

    def test_budget(self):
        cfg = GameConfig(disks=8, pegs=4, ending=Ending.TO_PEG)
        with pytest.raises(BudgetExceeded):
            build_graph(cfg, budget_states=1000)

    def test_reachable_closed_under_moves(self):
        cfg = GameConfig(disks=3, pegs=3, ending=Ending.ANY_LARGEST)
        g = build_graph(cfg)
        for idx in g.reachable:
            for tgt, _, _ in g.succ[idx]:
                assert tgt in g.reachable


class TestNormalSolve:
    @pytest.mark.parametrize("disks", [1, 2, 3])
    def test_matches_naive_fixpoint_three_pegs(self, disks):
        for ending in applicable_endings(disks):
            cfg = GameConfig(disks=disks, pegs=3, ending=ending)
            assert shortest_forced_win(cfg) == naive_radius(cfg), (disks, ending)

    @pytest.mark.parametrize("disks", [1, 2])
    def test_matches_naive_fixpoint_four_pegs(self, disks):
        for ending in applicable_endings(disks):
            cfg = GameConfig(disks=disks, pegs=4, ending=ending)
            assert shortest_forced_win(cfg) == naive_radius(cfg), (disks, ending)

    def test_known_radii(self):
        fixtures = [
            (3, Ending.TO_PEG, 7),
            (2, Ending.RETURN_LARGEST, 7),
            (3, Ending.RETURN_LARGEST, 15),
            (4, Ending.RETURN_LARGEST, 23),
            (5, Ending.RETURN_LARGEST, 39),
            (4, Ending.RETURN_SMALLEST, 7),
            (3, Ending.ANY_SMALLEST, 7),
            (4, Ending.ANY_LARGEST, 15),
        ]
        for disks, ending, radius in fixtures:
            cfg = GameConfig(disks=disks, pegs=3, ending=ending)
            assert shortest_forced_win(cfg) == radius, (disks, ending)

    def test_four_peg_draws(self):
        for disks in (2, 3):
            cfg = GameConfig(disks=disks, pegs=4, ending=Ending.TO_PEG)
            assert shortest_forced_win(cfg) == inf
        cfg = GameConfig(disks=2, pegs=4, ending=Ending.ANY_SMALLEST)
        assert shortest_forced_win(cfg) == 3

    def test_principal_line_is_playable(self):
        cfg = GameConfig(disks=3, pegs=3, ending=Ending.RETURN_LARGEST)
        g = build_graph(cfg)
        lab = solve_normal(g)
        line = lab.principal_line()
        assert len(line) == lab.initial_radius
        s = initial_state(cfg)
        for mv in line:
            s = apply_move(s, mv, cfg)
        assert is_terminal(s, cfg)

    def test_labels_cover_reachable(self):
        cfg = GameConfig(disks=2, pegs=3, ending=Ending.TO_PEG)
        g = build_graph(cfg)
        lab = solve_normal(g)
        for idx in g.reachable:
            assert lab.label_of(idx) in {"Win", "Loss", "Draw", "Terminal"}


class TestBoundedSearch:
    def test_two_disk_uniform(self):
        cfg = GameConfig(disks=2, pegs=3, ending=Ending.TO_PEG)
        res = bounded_scoring_search(cfg, Weights.of(1, 1, 1), 9)
        assert res.win_found
        assert res.min_win_plies == 3
        assert res.best_delta == 1

    def test_two_disk_zero_weights_never_win(self):
        cfg = GameConfig(disks=2, pegs=3, ending=Ending.TO_PEG)
        res = bounded_scoring_search(cfg, Weights.of(0, 0, 0), 30)
        assert not res.win_found

    def test_three_disk_line(self):
        cfg = GameConfig(disks=3, pegs=3, ending=Ending.TO_PEG)
        res = bounded_scoring_search(cfg, Weights.of(1, 2, 3), 9)
        assert res.win_found and res.min_win_plies == 7
        assert res.best_delta == 2
        s = initial_state(cfg)
        for mv in res.line:
            s = apply_move(s, mv, cfg)
        assert is_terminal(s, cfg)

    def test_deeper_win_via_pumping(self):
        cfg = GameConfig(disks=2, pegs=3, ending=Ending.TO_PEG)
        w = Weights.of(2, 2, -3)
        res = bounded_scoring_search(cfg, w, 30)
        assert res.win_found
        assert res.min_win_plies == 5
        assert res.best_delta >= 7

    def test_budget_guard(self):
        cfg = GameConfig(disks=3, pegs=3, ending=Ending.TO_PEG)
        with pytest.raises(BudgetExceeded):
            bounded_scoring_search(cfg, Weights.of(1, 1, 1), 9, budget_states=10)

    def test_fractional_weights(self):
        from fractions import Fraction

        cfg = GameConfig(disks=2, pegs=3, ending=Ending.TO_PEG)
        w = Weights.of("1/3", "1/2", "1/6")
        res = bounded_scoring_search(cfg, w, 9)
        assert res.win_found
        # The quick 3-ply finish only breaks even; the first true win
        # takes five plies and nets a full point.
        assert res.min_win_plies == 5
        assert res.best_delta == Fraction(1, 1)


class TestExports:
    @pytest.mark.parametrize("disks,nodes,edges", [(1, 3, 3), (2, 9, 12), (3, 27, 39)])
    def test_position_counts(self, disks, nodes, edges):
        cfg = GameConfig(disks=disks, pegs=3, ending=Ending.TO_PEG)
        data = json.loads(export_graph(cfg, fmt="json", level="position"))
        assert data["counts"] == {"nodes": nodes, "edges": edges}
        assert len(data["edges"]) == edges

    def test_dot_deterministic(self):
        cfg = GameConfig(disks=2, pegs=3, ending=Ending.TO_PEG)
        a = export_graph(cfg, fmt="dot", level="position")
        b = export_graph(cfg, fmt="dot", level="position")
        assert a == b
        assert a.endswith("\n")

    def test_dot_highlight(self):
        cfg = GameConfig(disks=2, pegs=3, ending=Ending.TO_PEG)
        plain = export_graph(cfg, fmt="dot", level="position")
        marked = export_graph(cfg, fmt="dot", level="position", highlight_minimal=True)
        assert "color=red" not in plain
        assert marked.count("color=red") == 3

    def test_state_level_counts(self):
        cfg = GameConfig(disks=2, pegs=3, ending=Ending.TO_PEG)
        g = build_graph(cfg)
        dot = export_graph(cfg, fmt="dot", level="state")
        assert dot.startswith("digraph")
        assert dot.count("[shape=") == g.reachable_count
        assert "doublecircle" in dot
        assert "style=dashed" in dot

    def test_bad_format(self):
        cfg = GameConfig(disks=2, pegs=3, ending=Ending.TO_PEG)
        with pytest.raises(Exception):
            export_graph(cfg, fmt="svg")
