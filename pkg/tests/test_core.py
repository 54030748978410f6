"""Rules engine: configurations, moves, termination, state codecs."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hanoiduel import (
    Ending,
    GameConfig,
    GameError,
    GameState,
    IllegalMove,
    InapplicableEnding,
    Move,
    Weights,
    apply_move,
    initial_state,
    is_terminal,
    legal_moves,
    parse_ending,
)
from hanoiduel.core import (
    state_from_index,
    state_from_text,
    state_index,
    state_space,
    state_to_text,
    validate_state,
)

from helpers import applicable_endings


def cfg_of(disks, pegs=3, ending=Ending.TO_PEG, **kw):
    return GameConfig(disks=disks, pegs=pegs, ending=ending, **kw)


class TestConfig:
    def test_defaults(self):
        cfg = cfg_of(2)
        assert cfg.start_peg == 1
        assert cfg.final_peg == 3

    def test_final_peg_only_for_to_peg(self):
        cfg = GameConfig(disks=2, pegs=3, ending=Ending.ANY_LARGEST, final_peg=2)
        assert cfg.final_peg is None

    def test_final_must_differ_from_start(self):
        with pytest.raises(GameError):
            GameConfig(disks=2, pegs=3, ending=Ending.TO_PEG, start_peg=1, final_peg=1)

    def test_too_few_pegs(self):
        with pytest.raises(GameError):
            GameConfig(disks=2, pegs=2, ending=Ending.TO_PEG)

    def test_no_disks(self):
        with pytest.raises(GameError):
            GameConfig(disks=0, pegs=3, ending=Ending.TO_PEG)

    @pytest.mark.parametrize("ending", [Ending.RETURN_LARGEST, Ending.RETURN_SMALLEST])
    def test_single_disk_return_rejected(self, ending):
        # With one disk every position is a completed stack, so the first
        # move would already have to end the game on another peg.
        with pytest.raises(InapplicableEnding):
            GameConfig(disks=1, pegs=3, ending=ending)

    def test_peg_out_of_board(self):
        with pytest.raises(GameError):
            GameConfig(disks=2, pegs=3, ending=Ending.TO_PEG, start_peg=4)

    @pytest.mark.parametrize(
        "text,want",
        [
            ("1", Ending.TO_PEG),
            ("to-peg", Ending.TO_PEG),
            ("2", Ending.RETURN_LARGEST),
            ("return-largest", Ending.RETURN_LARGEST),
            ("return-smallest", Ending.RETURN_SMALLEST),
            ("any-largest", Ending.ANY_LARGEST),
            ("5", Ending.ANY_SMALLEST),
            ("any-smallest", Ending.ANY_SMALLEST),
        ],
    )
    def test_parse_ending(self, text, want):
        assert parse_ending(text) is want

    def test_parse_ending_garbage(self):
        with pytest.raises(GameError):
            parse_ending("sideways")


class TestLegalMoves:
    def test_initial_two_disks(self):
        cfg = cfg_of(2)
        assert legal_moves(initial_state(cfg), cfg) == (Move(1, 2), Move(1, 3))

    def test_ban_after_first_move(self):
        cfg = cfg_of(2)
        state = apply_move(initial_state(cfg), Move(1, 3), cfg)
        # Disk 1 just moved, so only disk 2 may move, and it cannot sit on
        # top of disk 1.
        assert legal_moves(state, cfg) == (Move(1, 2),)

    def test_single_disk_completion_filter(self):
        # Moving the lone disk to peg 2 would complete the tower on a peg
        # that does not satisfy the ending, which the rules forbid.
        cfg = cfg_of(1)
        assert legal_moves(initial_state(cfg), cfg) == (Move(1, 3),)

    def test_completion_filter_return_ending(self):
        cfg = cfg_of(2, ending=Ending.RETURN_LARGEST)
        s = initial_state(cfg)
        s = apply_move(s, Move(1, 3), cfg)
        s = apply_move(s, Move(1, 2), cfg)
        # Disk 1 on 3, disk 2 on 2.  Disk 1 onto peg 2 would complete the
        # tower on peg 2, not the start peg: banned.
        assert Move(3, 2) not in legal_moves(s, cfg)
        assert Move(3, 1) in legal_moves(s, cfg)

    def test_larger_on_smaller_rejected(self):
        cfg = cfg_of(2)
        s = apply_move(initial_state(cfg), Move(1, 3), cfg)
        with pytest.raises(IllegalMove, match="smaller"):
            apply_move(s, Move(1, 3), cfg)

    def test_empty_source_rejected(self):
        cfg = cfg_of(2)
        with pytest.raises(IllegalMove):
            apply_move(initial_state(cfg), Move(2, 3), cfg)

    def test_ban_message(self):
        cfg = cfg_of(2)
        s = apply_move(initial_state(cfg), Move(1, 3), cfg)
        with pytest.raises(IllegalMove, match="previous ply"):
            apply_move(s, Move(3, 2), cfg)

    def test_terminal_has_no_moves(self):
        cfg = cfg_of(1)
        s = apply_move(initial_state(cfg), Move(1, 3), cfg)
        assert is_terminal(s, cfg)
        assert legal_moves(s, cfg) == ()
        with pytest.raises(IllegalMove, match="over"):
            apply_move(s, Move(3, 1), cfg)


class TestTermination:
    def test_to_peg(self):
        cfg = cfg_of(2)
        assert is_terminal(GameState(pos=(3, 3), last_moved=1), cfg)
        assert not is_terminal(GameState(pos=(2, 2), last_moved=1), cfg)
        assert not is_terminal(GameState(pos=(3, 2), last_moved=1), cfg)

    def test_return_needs_flag(self):
        cfg = cfg_of(2, ending=Ending.RETURN_LARGEST)
        home = GameState(pos=(1, 1), last_moved=1, largest_moved=False)
        assert not is_terminal(home, cfg)
        moved = GameState(pos=(1, 1), last_moved=1, largest_moved=True)
        assert is_terminal(moved, cfg)

    def test_any_peg_endings(self):
        cfg = cfg_of(2, ending=Ending.ANY_LARGEST)
        on2 = GameState(pos=(2, 2), last_moved=1, largest_moved=True)
        assert is_terminal(on2, cfg)
        cfg5 = cfg_of(2, ending=Ending.ANY_SMALLEST)
        assert is_terminal(
            GameState(pos=(2, 2), last_moved=1, smallest_moved=True), cfg5
        )
        assert not is_terminal(
            GameState(pos=(1, 1), last_moved=None), cfg5
        )

    def test_start_variant(self):
        cfg = GameConfig(disks=2, pegs=3, ending=Ending.TO_PEG, start_peg=2, final_peg=1)
        s = initial_state(cfg)
        assert s.pos == (2, 2)
        assert is_terminal(GameState(pos=(1, 1), last_moved=1), cfg)


class TestStateCodec:
    def test_space_size(self):
        assert state_space(cfg_of(2)) == 108
        assert state_space(cfg_of(3, pegs=4)) == 1024

    @pytest.mark.parametrize("disks,pegs", [(2, 3), (3, 3), (2, 4)])
    def test_index_round_trip_exhaustive(self, disks, pegs):
        cfg = cfg_of(disks, pegs=pegs)
        for idx in range(state_space(cfg)):
            st = state_from_index(idx, cfg)
            assert state_index(st, cfg) == idx

    def test_index_out_of_range(self):
        cfg = cfg_of(2)
        with pytest.raises(GameError):
            state_from_index(108, cfg)

    def test_text_round_trip(self):
        cfg = cfg_of(2)
        s = apply_move(initial_state(cfg), Move(1, 3), cfg)
        text = state_to_text(s, cfg)
        assert text == "pegs=3;disks=2;pos=3,1;last=1;flags=01"
        back, pegs, disks = state_from_text(text)
        assert (pegs, disks) == (3, 2)
        assert back == s

    @pytest.mark.parametrize(
        "bad",
        [
            "pegs=3;disks=2;pos=3;last=1;flags=01",
            "pegs=3;disks=2;pos=3,1;last=9;flags=01",
            "pegs=3;disks=2;pos=3,1;last=1;flags=5",
            "no fields at all",
        ],
    )
    def test_text_rejects_malformed(self, bad):
        with pytest.raises(GameError):
            state_from_text(bad)


@st.composite
def walks(draw):
    disks = draw(st.integers(min_value=1, max_value=4))
    pegs = draw(st.sampled_from([3, 4]))
    endings = applicable_endings(disks)
    ending = draw(st.sampled_from(endings))
    steps = draw(st.lists(st.integers(min_value=0, max_value=11), max_size=40))
    return disks, pegs, ending, steps


@settings(max_examples=150, deadline=None)
@given(walks())
def test_random_walks_stay_valid(walk):
    """Random legal play never produces an invalid state and the move
    flags only ever switch on."""
    disks, pegs, ending, steps = walk
    cfg = GameConfig(disks=disks, pegs=pegs, ending=ending)
    state = initial_state(cfg)
    for pick in steps:
        moves = legal_moves(state, cfg)
        if not moves:
            assert is_terminal(state, cfg)
            break
        move = moves[pick % len(moves)]
        nxt = apply_move(state, move, cfg)
        validate_state(nxt, cfg)
        assert state_from_index(state_index(nxt, cfg), cfg) == nxt
        assert nxt.largest_moved >= state.largest_moved
        assert nxt.smallest_moved >= state.smallest_moved
        assert nxt.last_moved is not None
        state = nxt


def test_weights_helpers():
    w = Weights.of(1, "1/2", 0.25)
    assert w.edge(1, 2) == 1
    assert w.edge(3, 1) == w.w13
    assert w.as_tuple()[2].denominator == 4
    assert not w.is_uniform
    assert Weights.of(2, 2, 2).is_uniform
    m12, m13, m23, mult = w.scaled_integers()
    assert (m12, m13, m23) == (4, 2, 1)
    assert mult == 4


def test_weights_permuted():
    w = Weights.of(1, 2, 3)
    # Swap pegs 2 and 3: the 1-2 edge becomes the 1-3 edge.
    sw = w.permuted({1: 1, 2: 3, 3: 2})
    assert sw == Weights.of(2, 1, 3)
