"""Move-sequence notation: AST, parser, printer and replay.

A move is written as two peg digits, e.g. ``13``.  The pair names the edge
between two pegs, not a direction: in any position at most one of the two
directions along an edge can be legal (the smaller top disk goes onto the
larger), so replay resolves the direction from the current state.

Grammar (whitespace is ignored everywhere)::

    seq  := term ('-' term)*
    term := MOVE | '(' seq ')' '^' INT
    MOVE := DIGIT DIGIT        (two distinct pegs, 1..9)

``(...)^k`` repeats a group k times (k = 0 is allowed and expands to
nothing).  An infinite exponent (``^inf`` or the infinity sign) names a
drawing loop and cannot be expanded; parsing one raises
:class:`InfiniteRepetition`.  Pegs beyond the board (or the digit 0) raise
:class:`PegOutOfRange`.  The digit syntax caps boards at nine pegs, which is
plenty for every game studied here.

The AST also has a ``Reverse`` node so strategy objects can carry a
"play this backwards" part symbolically; printing or expanding one resolves
it (reversing a sequence of edge moves just reverses the order, since the
atoms are undirected).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import (
    GameConfig,
    GameState,
    Move,
    Weights,
    apply_move,
    initial_state,
    is_terminal,
    legal_moves,
)


class NotationError(Exception):
    """Base class for notation parsing errors."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at index {position})")
        self.position = position


class SequenceSyntaxError(NotationError):
    """Malformed sequence text."""


class PegOutOfRange(NotationError):
    """A move names peg 0 or a peg beyond the board."""


class InfiniteRepetition(NotationError):
    """An infinite exponent cannot be expanded into a finite sequence."""


@dataclass(frozen=True)
class Atom:
    """One move along the edge between pegs ``i`` and ``j``."""

    i: int
    j: int


@dataclass(frozen=True)
class Concat:
    parts: tuple["SeqExpr", ...]


@dataclass(frozen=True)
class Repeat:
    body: "SeqExpr"
    count: int


@dataclass(frozen=True)
class Reverse:
    body: "SeqExpr"


SeqExpr = Atom | Concat | Repeat | Reverse


def atoms_to_expr(pairs) -> SeqExpr:
    """Build an expression from (i, j) pairs (a single Atom or a Concat)."""
    atoms = tuple(Atom(min(i, j), max(i, j)) for i, j in pairs)
    if not atoms:
        return Concat(())
    if len(atoms) == 1:
        return atoms[0]
    return Concat(atoms)


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str | None:
        self._skip_ws()
        if self.pos >= len(self.text):
            return None
        return self.text[self.pos]

    def take(self) -> str | None:
        c = self.peek()
        if c is not None:
            self.pos += 1
        return c


def parse(text: str, pegs: int = 9) -> SeqExpr:
    """Parse sequence text into an AST.

    ``pegs`` bounds the peg digits accepted (at most 9).
    """
    scanner = _Scanner(text)
    if scanner.peek() is None:
        raise SequenceSyntaxError("empty sequence", scanner.pos)
    expr = _parse_seq(scanner, min(pegs, 9))
    if scanner.peek() is not None:
        raise SequenceSyntaxError(
            f"unexpected character {scanner.peek()!r}", scanner.pos
        )
    return expr


def _parse_seq(scanner: _Scanner, pegs: int) -> SeqExpr:
    parts = [_parse_term(scanner, pegs)]
    while scanner.peek() == "-":
        scanner.take()
        parts.append(_parse_term(scanner, pegs))
    if len(parts) == 1:
        return parts[0]
    return Concat(tuple(parts))


def _parse_peg(scanner: _Scanner, pegs: int) -> int:
    c = scanner.peek()
    at = scanner.pos
    if c is None or not c.isdigit():
        raise SequenceSyntaxError(
            "expected a peg digit" if c is None else f"expected a peg digit, got {c!r}",
            at,
        )
    scanner.take()
    peg = int(c)
    if peg == 0 or peg > pegs:
        raise PegOutOfRange(f"peg {peg} is not on a board with {pegs} pegs", at)
    return peg


def _parse_term(scanner: _Scanner, pegs: int) -> SeqExpr:
    c = scanner.peek()
    at = scanner.pos
    if c == "(":
        scanner.take()
        body = _parse_seq(scanner, pegs)
        if scanner.peek() != ")":
            raise SequenceSyntaxError("expected ')'", scanner.pos)
        scanner.take()
        if scanner.peek() != "^":
            raise SequenceSyntaxError("expected '^' after ')'", scanner.pos)
        scanner.take()
        count = _parse_exponent(scanner)
        return Repeat(body, count)
    if c is not None and c.isdigit():
        i = _parse_peg(scanner, pegs)
        j_at = scanner.pos
        j = _parse_peg(scanner, pegs)
        if i == j:
            raise SequenceSyntaxError("the two pegs of a move must differ", j_at)
        return Atom(i, j)
    raise SequenceSyntaxError(
        "unexpected end of input" if c is None else f"unexpected character {c!r}",
        at,
    )


def _parse_exponent(scanner: _Scanner) -> int:
    c = scanner.peek()
    at = scanner.pos
    if c == "∞":
        raise InfiniteRepetition("infinite repetition cannot be expanded", at)
    if c is not None and c.isalpha():
        word = ""
        while scanner.peek() is not None and scanner.peek().isalpha():
            word += scanner.take()
        if word.lower() == "inf":
            raise InfiniteRepetition("infinite repetition cannot be expanded", at)
        raise SequenceSyntaxError(f"bad exponent {word!r}", at)
    digits = ""
    while scanner.peek() is not None and scanner.peek().isdigit():
        digits += scanner.take()
    if not digits:
        raise SequenceSyntaxError("expected an exponent", at)
    return int(digits)


def to_text(expr: SeqExpr) -> str:
    """Render an expression in the notation grammar (Reverse is resolved)."""
    if isinstance(expr, Reverse):
        return to_text(reverse_seq(expr.body))
    if isinstance(expr, Atom):
        return f"{expr.i}{expr.j}"
    if isinstance(expr, Repeat):
        return f"({to_text(expr.body)})^{expr.count}"
    parts = [to_text(p) for p in expr.parts]
    return "-".join(p for p in parts if p)


def expand(expr: SeqExpr) -> tuple[tuple[int, int], ...]:
    """Flatten an expression into its (i, j) edge pairs, in play order."""
    if isinstance(expr, Atom):
        return ((expr.i, expr.j),)
    if isinstance(expr, Concat):
        out: list[tuple[int, int]] = []
        for part in expr.parts:
            out.extend(expand(part))
        return tuple(out)
    if isinstance(expr, Repeat):
        return expand(expr.body) * expr.count
    return tuple(reversed(expand(expr.body)))


def seq_length(expr: SeqExpr) -> int:
    """Number of moves the expression expands to."""
    if isinstance(expr, Atom):
        return 1
    if isinstance(expr, Concat):
        return sum(seq_length(p) for p in expr.parts)
    if isinstance(expr, Repeat):
        return expr.count * seq_length(expr.body)
    return seq_length(expr.body)


def reverse_seq(expr: SeqExpr) -> SeqExpr:
    """Structurally reverse an expression (edge atoms are direction free)."""
    if isinstance(expr, Atom):
        return expr
    if isinstance(expr, Concat):
        return Concat(tuple(reverse_seq(p) for p in reversed(expr.parts)))
    if isinstance(expr, Repeat):
        return Repeat(reverse_seq(expr.body), expr.count)
    return expr.body


def resolve_direction(
    state: GameState, cfg: GameConfig, i: int, j: int
) -> Move | None:
    """The unique legal move along edge i-j in ``state``, if any."""
    for move in legal_moves(state, cfg):
        if {move.source, move.target} == {i, j}:
            return move
    return None


@dataclass(frozen=True)
class ReplayReport:
    """Outcome of replaying a sequence from a state.

    ``legal`` is False as soon as any atom cannot be played, including
    trailing atoms after the game already ended; ``failed_at`` is then the
    1-based index of the first unplayable atom.  ``forced_even_plies`` is
    True when the second player had exactly one legal move at every even ply
    that was played.  Points are collected per ``Weights`` if given; odd
    plies belong to the first player.
    """

    legal: bool
    failed_at: int | None
    terminal: bool
    forced_even_plies: bool
    final_state: GameState
    plies_applied: int
    a_points: Fraction
    b_points: Fraction

    @property
    def delta(self) -> Fraction:
        return self.a_points - self.b_points


def replay(
    cfg: GameConfig,
    start: GameState | None,
    expr: SeqExpr,
    weights: Weights | None = None,
) -> ReplayReport:
    """Play ``expr`` from ``start`` (initial state if None) under ``cfg``."""
    state = initial_state(cfg) if start is None else start
    a_points = Fraction(0)
    b_points = Fraction(0)
    forced = True
    legal = True
    failed_at: int | None = None
    applied = 0
    for ply, (i, j) in enumerate(expand(expr), start=1):
        if is_terminal(state, cfg):
            legal = False
            failed_at = ply
            break
        moves = legal_moves(state, cfg)
        move = None
        if i <= cfg.pegs and j <= cfg.pegs:
            for m in moves:
                if {m.source, m.target} == {i, j}:
                    move = m
                    break
        if move is None:
            legal = False
            failed_at = ply
            break
        if ply % 2 == 0 and len(moves) != 1:
            forced = False
        if weights is not None:
            points = weights.edge(i, j)
            if ply % 2 == 1:
                a_points += points
            else:
                b_points += points
        state = apply_move(state, move, cfg)
        applied += 1
    return ReplayReport(
        legal=legal,
        failed_at=failed_at,
        terminal=is_terminal(state, cfg),
        forced_even_plies=forced,
        final_state=state,
        plies_applied=applied,
        a_points=a_points,
        b_points=b_points,
    )
