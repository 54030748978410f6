"""Game model for the two-player Tower of Hanoi.

Two players, Anh (moving first) and Bao, alternate moves of a single tower
of n disks across l pegs (disk 1 is the smallest, disk n the largest).  A
move takes the top disk of one peg and puts it on an empty peg or on top of
a strictly larger disk.  The disk moved in the previous ply may not be moved
again immediately.  The game ends the moment all n disks are stacked on one
peg, and a move that completes such a stack is only legal if the resulting
state satisfies the configured ending condition; completions that would
violate it are excluded from the legal moves.

Ending conditions:

1. ``TO_PEG``          all disks on a fixed target peg (distinct from start)
2. ``RETURN_LARGEST``  all disks back on the start peg, largest disk has moved
3. ``RETURN_SMALLEST`` all disks back on the start peg, smallest disk has moved
4. ``ANY_LARGEST``     all disks on any peg, largest disk has moved
5. ``ANY_SMALLEST``    all disks on any peg, smallest disk has moved

``RETURN_LARGEST`` and ``RETURN_SMALLEST`` are rejected for n = 1: with a
single disk every position is a completed stack, so no move can ever be legal
(any first move would finish the game away from the start peg) and the
ending is unsatisfiable.

In the scoring variant each edge between two pegs carries a rational weight
and a player collects the weight of every edge they move a disk along; see
:class:`Weights`.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction
from math import lcm


class GameError(Exception):
    """Base class for rule and configuration errors."""


class IllegalMove(GameError):
    """Raised when a move violates the rules in the current state."""


class InapplicableEnding(GameError):
    """Raised for ending conditions that are unsatisfiable for the config."""


class Ending(IntEnum):
    TO_PEG = 1
    RETURN_LARGEST = 2
    RETURN_SMALLEST = 3
    ANY_LARGEST = 4
    ANY_SMALLEST = 5


_ENDING_ALIASES = {
    "to-peg": Ending.TO_PEG,
    "return-largest": Ending.RETURN_LARGEST,
    "return-smallest": Ending.RETURN_SMALLEST,
    "any-largest": Ending.ANY_LARGEST,
    "any-smallest": Ending.ANY_SMALLEST,
}


def parse_ending(text: str) -> Ending:
    """Parse an ending condition given as its number or mnemonic alias."""
    key = text.strip().lower()
    if key in _ENDING_ALIASES:
        return _ENDING_ALIASES[key]
    try:
        return Ending(int(key))
    except (KeyError, ValueError):
        raise InapplicableEnding(f"unknown ending condition {text!r}") from None


def _as_fraction(value) -> Fraction:
    if isinstance(value, float):
        # Repr round-trips decimal CLI input exactly; 0.1 stays 1/10.
        return Fraction(repr(value))
    return Fraction(value)


@dataclass(frozen=True)
class Weights:
    """Rational edge weights for the scoring variant on three pegs.

    ``w12`` is collected whenever a disk moves between pegs 1 and 2, in
    either direction, and similarly for the other edges.
    """

    w12: Fraction
    w13: Fraction
    w23: Fraction

    @classmethod
    def of(cls, w12, w13, w23) -> "Weights":
        return cls(_as_fraction(w12), _as_fraction(w13), _as_fraction(w23))

    def edge(self, a: int, b: int) -> Fraction:
        pair = (min(a, b), max(a, b))
        if pair == (1, 2):
            return self.w12
        if pair == (1, 3):
            return self.w13
        if pair == (2, 3):
            return self.w23
        raise ValueError(f"no weight for edge {a}-{b}")

    def as_tuple(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.w12, self.w13, self.w23)

    @property
    def is_uniform(self) -> bool:
        return self.w12 == self.w13 == self.w23

    def permuted(self, sigma: dict[int, int]) -> "Weights":
        """Weights of the game with pegs relabelled by ``sigma``.

        ``sigma[p]`` is the new name of peg ``p``; the returned weights w'
        satisfy w'_{sigma(a)sigma(b)} = w_{ab}.
        """
        table = {}
        for a, b in ((1, 2), (1, 3), (2, 3)):
            x, y = sigma[a], sigma[b]
            table[(min(x, y), max(x, y))] = self.edge(a, b)
        return Weights(table[(1, 2)], table[(1, 3)], table[(2, 3)])

    def scaled_integers(self) -> tuple[int, int, int, int]:
        """Return (m12, m13, m23, mult) with m_xy = w_xy * mult, all ints."""
        mult = lcm(
            self.w12.denominator, self.w13.denominator, self.w23.denominator
        )
        return (
            int(self.w12 * mult),
            int(self.w13 * mult),
            int(self.w23 * mult),
            mult,
        )


@dataclass(frozen=True)
class GameConfig:
    """Immutable game parameters.

    Args:
        disks: number of disks n >= 1.
        pegs: number of pegs l >= 3.
        ending: the ending condition in force.
        start_peg: peg holding the initial stack (default 1).
        final_peg: target peg for ``TO_PEG`` (default 3); must differ from
            the start peg.  Normalised to None for the other endings.
    """

    disks: int
    pegs: int
    ending: Ending
    start_peg: int = 1
    final_peg: int | None = None

    def __post_init__(self) -> None:
        if self.disks < 1:
            raise GameError(f"need at least one disk, got {self.disks}")
        if self.pegs < 3:
            raise GameError(f"need at least three pegs, got {self.pegs}")
        if not 1 <= self.start_peg <= self.pegs:
            raise GameError(f"start peg {self.start_peg} out of range")
        ending = Ending(self.ending)
        object.__setattr__(self, "ending", ending)
        if ending is Ending.TO_PEG:
            final = 3 if self.final_peg is None else self.final_peg
            if not 1 <= final <= self.pegs:
                raise GameError(f"final peg {final} out of range")
            if final == self.start_peg:
                raise GameError("final peg must differ from the start peg")
            object.__setattr__(self, "final_peg", final)
        else:
            object.__setattr__(self, "final_peg", None)
        if ending in (Ending.RETURN_LARGEST, Ending.RETURN_SMALLEST):
            if self.disks == 1:
                raise InapplicableEnding(
                    "return endings are unsatisfiable with a single disk"
                )


@dataclass(frozen=True)
class GameState:
    """A game position.

    ``pos[d-1]`` is the peg currently holding disk d.  ``last_moved`` is the
    disk moved in the previous ply (None before the first move).  The two
    flags record whether the largest/smallest disk has moved at least once.
    """

    pos: tuple[int, ...]
    last_moved: int | None = None
    largest_moved: bool = False
    smallest_moved: bool = False


@dataclass(frozen=True, order=True)
class Move:
    """A directed move of the top disk from ``source`` peg to ``target``."""

    source: int
    target: int


def initial_state(cfg: GameConfig) -> GameState:
    return GameState(pos=(cfg.start_peg,) * cfg.disks)


def validate_state(state: GameState, cfg: GameConfig) -> None:
    """Raise GameError unless the state is structurally valid for cfg."""
    if len(state.pos) != cfg.disks:
        raise GameError(
            f"state has {len(state.pos)} disks, config has {cfg.disks}"
        )
    for disk, peg in enumerate(state.pos, start=1):
        if not 1 <= peg <= cfg.pegs:
            raise GameError(f"disk {disk} on out-of-range peg {peg}")
    if state.last_moved is not None and not 1 <= state.last_moved <= cfg.disks:
        raise GameError(f"last moved disk {state.last_moved} out of range")


def top_disk(pos: tuple[int, ...], peg: int) -> int | None:
    """The smallest (topmost) disk on ``peg``, or None if the peg is empty."""
    for disk, p in enumerate(pos, start=1):
        if p == peg:
            return disk
    return None


def completed_peg(state: GameState) -> int | None:
    """The peg holding all disks, or None if the tower is split."""
    first = state.pos[0]
    for p in state.pos[1:]:
        if p != first:
            return None
    return first


def _ending_satisfied(
    cfg: GameConfig, peg: int, largest_moved: bool, smallest_moved: bool
) -> bool:
    ending = cfg.ending
    if ending is Ending.TO_PEG:
        return peg == cfg.final_peg
    if ending is Ending.RETURN_LARGEST:
        return peg == cfg.start_peg and largest_moved
    if ending is Ending.RETURN_SMALLEST:
        return peg == cfg.start_peg and smallest_moved
    if ending is Ending.ANY_LARGEST:
        return largest_moved
    return smallest_moved


def is_terminal(state: GameState, cfg: GameConfig) -> bool:
    """True when the full stack sits on a peg satisfying the ending."""
    peg = completed_peg(state)
    if peg is None:
        return False
    return _ending_satisfied(cfg, peg, state.largest_moved, state.smallest_moved)


def _move_status(
    state: GameState, cfg: GameConfig, source: int, target: int
) -> tuple[bool, str]:
    """Check one directed move; returns (legal, reason-if-not)."""
    if source == target:
        return False, "source and target peg coincide"
    if not (1 <= source <= cfg.pegs and 1 <= target <= cfg.pegs):
        return False, "peg out of range"
    disk = top_disk(state.pos, source)
    if disk is None:
        return False, f"peg {source} is empty"
    if disk == state.last_moved:
        return False, f"disk {disk} was moved in the previous ply"
    resting = top_disk(state.pos, target)
    if resting is not None and resting < disk:
        return False, f"disk {disk} cannot rest on smaller disk {resting}"
    completing = all(
        p == target for d, p in enumerate(state.pos, start=1) if d != disk
    )
    if completing:
        largest = state.largest_moved or disk == cfg.disks
        smallest = state.smallest_moved or disk == 1
        if not _ending_satisfied(cfg, target, largest, smallest):
            return False, (
                "completing the stack on peg "
                f"{target} would violate the ending condition"
            )
    return True, ""


def legal_moves(state: GameState, cfg: GameConfig) -> tuple[Move, ...]:
    """All legal moves in ``state``, sorted by (source, target).

    Terminal states have no legal moves by definition.
    """
    if is_terminal(state, cfg):
        return ()
    found = []
    for source in range(1, cfg.pegs + 1):
        for target in range(1, cfg.pegs + 1):
            ok, _ = _move_status(state, cfg, source, target)
            if ok:
                found.append(Move(source, target))
    return tuple(found)


def apply_move(state: GameState, move: Move, cfg: GameConfig) -> GameState:
    """Apply a legal move; raises IllegalMove otherwise."""
    if is_terminal(state, cfg):
        raise IllegalMove("the game is already over")
    ok, reason = _move_status(state, cfg, move.source, move.target)
    if not ok:
        raise IllegalMove(f"move {move.source}->{move.target}: {reason}")
    disk = top_disk(state.pos, move.source)
    assert disk is not None
    pos = list(state.pos)
    pos[disk - 1] = move.target
    return GameState(
        pos=tuple(pos),
        last_moved=disk,
        largest_moved=state.largest_moved or disk == cfg.disks,
        smallest_moved=state.smallest_moved or disk == 1,
    )


def state_space(cfg: GameConfig) -> int:
    """Size of the index space: l^n * (n+1) * 4."""
    return cfg.pegs**cfg.disks * (cfg.disks + 1) * 4


def state_index(state: GameState, cfg: GameConfig) -> int:
    """Pack a state into a dense index in ``range(state_space(cfg))``."""
    pos_index = 0
    for disk in range(cfg.disks, 0, -1):
        pos_index = pos_index * cfg.pegs + (state.pos[disk - 1] - 1)
    last_code = 0 if state.last_moved is None else state.last_moved
    idx = pos_index * (cfg.disks + 1) + last_code
    idx = idx * 2 + (1 if state.largest_moved else 0)
    return idx * 2 + (1 if state.smallest_moved else 0)


def state_from_index(index: int, cfg: GameConfig) -> GameState:
    if not 0 <= index < state_space(cfg):
        raise GameError(f"state index {index} out of range")
    index, smallest_bit = divmod(index, 2)
    index, largest_bit = divmod(index, 2)
    pos_index, last_code = divmod(index, cfg.disks + 1)
    pos = []
    for _ in range(cfg.disks):
        pos_index, peg = divmod(pos_index, cfg.pegs)
        pos.append(peg + 1)
    return GameState(
        pos=tuple(pos),
        last_moved=None if last_code == 0 else last_code,
        largest_moved=bool(largest_bit),
        smallest_moved=bool(smallest_bit),
    )


def state_to_text(state: GameState, cfg: GameConfig) -> str:
    """Render a state in the one-line text format.

    Example: ``pegs=3;disks=2;pos=1,3;last=1;flags=01`` (flags are the
    largest-moved and smallest-moved bits, in that order).
    """
    last = "-" if state.last_moved is None else str(state.last_moved)
    flags = f"{int(state.largest_moved)}{int(state.smallest_moved)}"
    pos = ",".join(str(p) for p in state.pos)
    return f"pegs={cfg.pegs};disks={cfg.disks};pos={pos};last={last};flags={flags}"


def state_from_text(text: str) -> tuple[GameState, int, int]:
    """Parse the text format; returns (state, pegs, disks)."""
    fields = {}
    for part in text.strip().split(";"):
        if "=" not in part:
            raise GameError(f"malformed state field {part!r}")
        key, value = part.split("=", 1)
        fields[key.strip()] = value.strip()
    try:
        pegs = int(fields["pegs"])
        disks = int(fields["disks"])
        pos = tuple(int(p) for p in fields["pos"].split(","))
        last_text = fields["last"]
        flags = fields["flags"]
    except (KeyError, ValueError) as exc:
        raise GameError(f"malformed state text {text!r}") from exc
    if len(pos) != disks:
        raise GameError("pos field length disagrees with disks")
    if len(flags) != 2 or set(flags) - {"0", "1"}:
        raise GameError(f"malformed flags field {flags!r}")
    last = None if last_text == "-" else int(last_text)
    if pegs < 3 or disks < 1:
        raise GameError("state text needs pegs >= 3 and disks >= 1")
    if any(not 1 <= p <= pegs for p in pos):
        raise GameError("pos field mentions a peg off the board")
    if last is not None and not 1 <= last <= disks:
        raise GameError(f"last field names a disk out of range: {last}")
    state = GameState(
        pos=pos,
        last_moved=last,
        largest_moved=flags[0] == "1",
        smallest_moved=flags[1] == "1",
    )
    return state, pegs, disks
