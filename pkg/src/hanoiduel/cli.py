"""Command line interface.

Subcommands::

    solve         normal-play verdict, minimum moves, solver cross-check
    score         scoring-play verdict and certificate for a weight triple
    minmoves      minimum moves to settle the game (normal or scoring)
    strategy      synthesise and verify the pumped scoring strategy
    replay        replay a move sequence and report what happened
    graph         export the game graph as DOT or JSON
    region        CSV sweep of scoring verdicts over a weight grid
    verify-paper  run the built-in cross-check suite

Exit codes: 0 on success, 1 when a verification cross-check disagrees,
2 for usage or configuration errors.  ``--json`` switches any subcommand to
a stable JSON report on stdout.  Weights accept integers, decimals or
fractions (``-3``, ``0.25``, ``1/2``).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from math import inf

from .core import (
    Ending,
    GameConfig,
    GameError,
    Weights,
    initial_state,
    parse_ending,
    state_from_text,
    state_space,
    state_to_text,
)
from . import construct
from .notation import (
    NotationError,
    parse as parse_seq,
    replay,
    seq_length,
    to_text,
)
from .scoreforms import (
    MinMovesResult,
    Outcome,
    Verdict,
    min_moves_normal,
    min_moves_scoring,
    normal_verdict,
    scoring_verdict,
)
from .solve import (
    BudgetExceeded,
    bounded_scoring_search,
    build_graph,
    export_graph,
    solve_normal,
)
from .verify import run_checks


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"bad rational {text!r}") from exc


def _count_json(x):
    return "inf" if x == inf else int(x)


def _cert_json(cert):
    if cert is None:
        return None
    return {"text": to_text(cert), "length": seq_length(cert)}


def _verdict_json(v: Verdict):
    return {
        "outcome": v.outcome.value,
        "predicted_delta": None if v.predicted_delta is None else str(v.predicted_delta),
        "certificate": _cert_json(v.certificate),
    }


def _minmoves_json(m: MinMovesResult):
    return {"lower": _count_json(m.lower), "upper": _count_json(m.upper), "exact": m.exact}


def _config_json(cfg: GameConfig):
    return {
        "disks": cfg.disks,
        "pegs": cfg.pegs,
        "ending": int(cfg.ending),
        "start_peg": cfg.start_peg,
        "final_peg": cfg.final_peg,
    }


def _emit(args, payload: dict, human: list[str]) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in human:
            print(line)


def _make_config(args) -> GameConfig:
    return GameConfig(
        disks=args.disks,
        pegs=args.pegs,
        ending=parse_ending(args.ec),
        start_peg=args.start,
        final_peg=args.final,
    )


def _make_weights(args) -> Weights:
    missing = [n for n in ("w12", "w13", "w23") if getattr(args, n) is None]
    if missing:
        raise GameError(f"missing weights: {', '.join('--' + m for m in missing)}")
    return Weights(args.w12, args.w13, args.w23)


def _add_game_args(p: argparse.ArgumentParser, disks_required: bool = True) -> None:
    p.add_argument("-n", "--disks", type=int, required=disks_required, default=None)
    p.add_argument("-l", "--pegs", type=int, default=3)
    p.add_argument(
        "--ec",
        default="1",
        help="ending condition: 1..5 or to-peg, return-largest, "
        "return-smallest, any-largest, any-smallest",
    )
    p.add_argument("--start", type=int, default=1, help="start peg (default 1)")
    p.add_argument("--final", type=int, default=None, help="target peg for --ec 1 (default 3)")


def _add_weight_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--w12", type=_fraction, default=None)
    p.add_argument("--w13", type=_fraction, default=None)
    p.add_argument("--w23", type=_fraction, default=None)


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json", action="store_true", help="emit a JSON report")
    p.add_argument("--budget-states", type=int, default=10**8)
    p.add_argument("--budget-depth", type=int, default=30)


# ---------------------------------------------------------------------------


def _cmd_solve(args) -> int:
    cfg = _make_config(args)
    verdict = normal_verdict(cfg)
    moves = min_moves_normal(cfg)
    payload = {
        "config": _config_json(cfg),
        "verdict": _verdict_json(verdict),
        "min_moves": _minmoves_json(moves),
        "oracle": None,
        "agrees": None,
    }
    human = [
        f"verdict: {verdict.outcome.value}",
    ]
    if verdict.certificate is not None:
        human.append(
            f"certificate: {to_text(verdict.certificate)}"
            f" ({seq_length(verdict.certificate)} moves)"
        )
    human.append(f"min moves: {_count_json(moves.upper)}")
    agrees = None
    try:
        graph = build_graph(cfg, args.budget_states)
    except BudgetExceeded as exc:
        human.append(f"oracle: skipped ({exc})")
    else:
        labeling = solve_normal(graph)
        label = labeling.initial_label
        radius = labeling.initial_radius
        oracle_outcome = {
            "Win": Outcome.FIRST_WIN.value,
            "Loss": Outcome.SECOND_WIN.value,
            "Draw": Outcome.DRAW.value,
        }[label]
        # Outcome agreement only; radius vs the closed-form table is the
        # business of `minmoves`, which owns that cross-check.
        agrees = oracle_outcome == verdict.outcome.value
        payload["oracle"] = {
            "initial_label": label,
            "initial_radius": _count_json(radius),
            "states_total": graph.total_states,
            "states_reachable": graph.reachable_count,
        }
        payload["agrees"] = agrees
        human.append(
            f"oracle: {label}, radius {_count_json(radius)}, "
            f"{graph.reachable_count}/{graph.total_states} states reachable"
        )
        human.append(f"agreement: {'yes' if agrees else 'MISMATCH'}")
    _emit(args, payload, human)
    return 0 if agrees in (None, True) else 1


def _cmd_score(args) -> int:
    cfg = _make_config(args)
    w = _make_weights(args)
    verdict = scoring_verdict(cfg, w)
    payload = {
        "config": _config_json(cfg),
        "weights": {"w12": str(w.w12), "w13": str(w.w13), "w23": str(w.w23)},
        "verdict": _verdict_json(verdict),
        "check": None,
    }
    human = [f"verdict: {verdict.outcome.value}"]
    if verdict.predicted_delta is not None:
        human.append(f"predicted delta: {verdict.predicted_delta}")
    if verdict.certificate is not None:
        text = to_text(verdict.certificate)
        if len(text) > 120:
            text = text[:117] + "..."
        human.append(
            f"certificate: {text} ({seq_length(verdict.certificate)} moves)"
        )
    ok = True
    if args.check:
        result = bounded_scoring_search(
            cfg, w, args.budget_depth, budget_states=args.budget_states
        )
        expected_win = verdict.outcome is Outcome.FIRST_WIN
        if expected_win:
            ok = result.win_found and result.best_delta > 0
        else:
            ok = not result.win_found
        payload["check"] = {
            "bound": args.budget_depth,
            "win_found": result.win_found,
            "min_win_plies": _count_json(result.min_win_plies),
            "best_delta": None if result.best_delta is None else str(result.best_delta),
            "agrees": ok,
        }
        human.append(
            f"search to {args.budget_depth} plies: "
            + (
                f"win in {_count_json(result.min_win_plies)} "
                f"(delta {result.best_delta})"
                if result.win_found
                else "no forced win"
            )
        )
        human.append(f"agreement: {'yes' if ok else 'MISMATCH'}")
    _emit(args, payload, human)
    return 0 if ok else 1


def _cmd_minmoves(args) -> int:
    cfg = _make_config(args)
    scoring = any(
        getattr(args, name) is not None for name in ("w12", "w13", "w23")
    )
    ok = True
    if scoring:
        w = _make_weights(args)
        moves = min_moves_scoring(cfg, w)
        payload = {
            "config": _config_json(cfg),
            "weights": {"w12": str(w.w12), "w13": str(w.w13), "w23": str(w.w23)},
            "mode": "scoring",
            "min_moves": _minmoves_json(moves),
            "check": None,
        }
    else:
        w = None
        moves = min_moves_normal(cfg)
        payload = {
            "config": _config_json(cfg),
            "mode": "normal",
            "min_moves": _minmoves_json(moves),
            "check": None,
        }
    if moves.exact:
        human = [f"min moves: {_count_json(moves.upper)}"]
    else:
        human = [
            f"min moves: between {_count_json(moves.lower)} "
            f"and {_count_json(moves.upper)}"
        ]
    if not args.no_check:
        check = _minmoves_check(cfg, w, moves, args)
        payload["check"] = check
        if check is None:
            human.append("oracle: skipped (too large for the default budget)")
        else:
            ok = check["agrees"]
            human.append(f"oracle: {check['summary']}")
            human.append(f"agreement: {'yes' if ok else 'MISMATCH'}")
    _emit(args, payload, human)
    return 0 if ok else 1


def _minmoves_check(cfg, w, moves: MinMovesResult, args):
    if state_space(cfg) > min(args.budget_states, 500_000):
        return None
    if w is None:
        from .solve import shortest_forced_win

        radius = shortest_forced_win(cfg, args.budget_states)
        agrees = radius == moves.upper if moves.exact else (
            moves.lower <= radius <= moves.upper
        )
        return {
            "kind": "normal-solver",
            "radius": _count_json(radius),
            "agrees": agrees,
            "summary": f"forced win radius {_count_json(radius)}",
        }
    if moves.upper == inf:
        result = bounded_scoring_search(
            cfg, w, args.budget_depth, budget_states=args.budget_states
        )
        agrees = not result.win_found
        return {
            "kind": "scoring-search",
            "bound": args.budget_depth,
            "min_win_plies": _count_json(result.min_win_plies),
            "agrees": agrees,
            "summary": f"no win within {args.budget_depth} plies"
            if agrees
            else f"unexpected win in {_count_json(result.min_win_plies)}",
        }
    if moves.upper > 63:
        return None
    result = bounded_scoring_search(
        cfg, w, int(moves.upper), budget_states=args.budget_states
    )
    agrees = result.win_found and moves.lower <= result.min_win_plies <= moves.upper
    if moves.exact:
        agrees = result.win_found and result.min_win_plies == moves.upper
    return {
        "kind": "scoring-search",
        "bound": int(moves.upper),
        "min_win_plies": _count_json(result.min_win_plies),
        "agrees": agrees,
        "summary": (
            f"first forced win at {_count_json(result.min_win_plies)} plies"
            if result.win_found
            else f"no win within {int(moves.upper)} plies"
        ),
    }


def _cmd_strategy(args) -> int:
    cfg = _make_config(args)
    w = _make_weights(args)
    if cfg.disks < 3:
        raise GameError(
            "strategy synthesis needs at least three disks; use `score` for"
            " the small games"
        )
    if w.is_uniform:
        verdict = scoring_verdict(cfg, w)
        payload = {
            "config": _config_json(cfg),
            "uniform_weights": str(w.w12),
            "verdict": _verdict_json(verdict),
        }
        human = [
            f"all weights equal {w.w12}: every finished game scores {w.w12}",
            f"verdict: {verdict.outcome.value}",
        ]
        _emit(args, payload, human)
        return 0
    plan = construct.scoring_strategy(cfg, w)
    report = replay(cfg, None, plan.full, w)
    ok = (
        report.legal
        and report.terminal
        and report.forced_even_plies
        and report.delta == plan.predicted_delta
        and report.delta > 0
    )
    payload = {
        "config": _config_json(cfg),
        "weights": {"w12": str(w.w12), "w13": str(w.w13), "w23": str(w.w23)},
        "plan": {
            "s1": to_text(plan.s1),
            "s3": to_text(plan.s3),
            "s2_inv": to_text(plan.s2_inv),
            "pumps": plan.pumps,
            "intermediate": list(plan.intermediate),
            "base_delta": str(plan.base_delta),
            "pump_increment": str(plan.pump_increment),
            "predicted_delta": str(plan.predicted_delta),
            "total_moves": seq_length(plan.full),
        },
        "replay": {
            "legal": report.legal,
            "terminal": report.terminal,
            "forced_even_plies": report.forced_even_plies,
            "delta": str(report.delta),
        },
        "agrees": ok,
    }
    human = [
        f"intermediate position: {','.join(map(str, plan.intermediate))}",
        f"s1 ({seq_length(plan.s1)} moves): {to_text(plan.s1)}",
        f"s3 pump x{plan.pumps}: {to_text(plan.s3)}",
        f"s2 reversed ({seq_length(plan.s2_inv)} moves): {to_text(plan.s2_inv)}",
        f"base delta {plan.base_delta}, pump adds {plan.pump_increment}",
        f"predicted delta: {plan.predicted_delta} over {seq_length(plan.full)} moves",
        f"replay: legal={report.legal} terminal={report.terminal} "
        f"forced={report.forced_even_plies} delta={report.delta}",
        f"agreement: {'yes' if ok else 'MISMATCH'}",
    ]
    _emit(args, payload, human)
    return 0 if ok else 1


def _cmd_replay(args) -> int:
    cfg = _make_config(args)
    try:
        expr = parse_seq(args.seq, cfg.pegs)
    except NotationError as exc:
        raise GameError(f"bad sequence: {exc}") from exc
    start = None
    if args.state is not None:
        state, pegs, disks = state_from_text(args.state)
        if pegs != cfg.pegs or disks != cfg.disks:
            raise GameError(
                "start state is for a different board "
                f"({disks} disks, {pegs} pegs)"
            )
        start = state
    weights = None
    if any(getattr(args, n) is not None for n in ("w12", "w13", "w23")):
        weights = _make_weights(args)
    report = replay(cfg, start, expr, weights)
    payload = {
        "config": _config_json(cfg),
        "sequence": to_text(expr),
        "moves": seq_length(expr),
        "legal": report.legal,
        "failed_at": report.failed_at,
        "terminal": report.terminal,
        "forced_even_plies": report.forced_even_plies,
        "plies_applied": report.plies_applied,
        "final_state": state_to_text(report.final_state, cfg),
    }
    human = [
        f"legal: {report.legal}"
        + (f" (failed at move {report.failed_at})" if report.failed_at else ""),
        f"terminal: {report.terminal}",
        f"forced even plies: {report.forced_even_plies}",
        f"final state: {state_to_text(report.final_state, cfg)}",
    ]
    if weights is not None:
        payload["a_points"] = str(report.a_points)
        payload["b_points"] = str(report.b_points)
        payload["delta"] = str(report.delta)
        human.append(
            f"points: first {report.a_points}, second {report.b_points}, "
            f"delta {report.delta}"
        )
    _emit(args, payload, human)
    return 0


def _cmd_graph(args) -> int:
    cfg = _make_config(args)
    text = export_graph(
        cfg,
        fmt=args.format,
        level=args.level,
        highlight_minimal=args.highlight_minimal,
        budget_states=args.budget_states,
    )
    if args.output and args.output != "-":
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_region(args) -> int:
    cfg = _make_config(args)
    try:
        lo_s, hi_s, step_s = args.grid.split(":")
        lo, hi, step = Fraction(lo_s), Fraction(hi_s), Fraction(step_s)
    except (ValueError, ZeroDivisionError) as exc:
        raise GameError(f"bad grid {args.grid!r}; expected lo:hi:step") from exc
    if step <= 0 or hi < lo:
        raise GameError(f"bad grid {args.grid!r}; expected lo:hi:step with step > 0")
    values = []
    v = lo
    while v <= hi:
        values.append(v)
        v += step
    out = sys.stdout if not args.output or args.output == "-" else open(
        args.output, "w", encoding="utf-8"
    )
    try:
        print("w12,w13,outcome", file=out)
        for w12 in values:
            for w13 in values:
                verdict = scoring_verdict(cfg, Weights(w12, w13, args.w23))
                print(f"{w12},{w13},{verdict.outcome.value}", file=out)
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def _cmd_verify(args) -> int:
    results = run_checks()
    failed = [r for r in results if not r.ok]
    if args.json:
        payload = {
            "checks": [
                {"name": r.name, "ok": r.ok, "detail": r.detail} for r in results
            ],
            "passed": len(results) - len(failed),
            "failed": len(failed),
        }
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for r in results:
            mark = "ok" if r.ok else "FAIL"
            line = f"{mark} - {r.name}"
            if r.detail and not r.ok:
                line += f": {r.detail}"
            print(line)
        print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hanoiduel",
        description="Two-player Tower of Hanoi: verdicts, strategies, verification",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="normal-play verdict and solver cross-check")
    _add_game_args(p)
    _add_common(p)
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("score", help="scoring-play verdict for a weight triple")
    _add_game_args(p)
    _add_weight_args(p)
    _add_common(p)
    p.add_argument(
        "--check",
        action="store_true",
        help="cross-check against the bounded search oracle",
    )
    p.set_defaults(func=_cmd_score)

    p = sub.add_parser("minmoves", help="minimum moves to settle the game")
    _add_game_args(p)
    _add_weight_args(p)
    _add_common(p)
    p.add_argument("--no-check", action="store_true", help="skip the oracle check")
    p.set_defaults(func=_cmd_minmoves)

    p = sub.add_parser("strategy", help="synthesise the pumped scoring strategy")
    _add_game_args(p)
    _add_weight_args(p)
    _add_common(p)
    p.set_defaults(func=_cmd_strategy)

    p = sub.add_parser("replay", help="replay a move sequence")
    _add_game_args(p)
    _add_weight_args(p)
    _add_common(p)
    p.add_argument("--seq", required=True, help="move sequence, e.g. 12-(13-12-23)^2-13")
    p.add_argument("--state", default=None, help="start state in text form")
    p.set_defaults(func=_cmd_replay)

    p = sub.add_parser("graph", help="export the game graph")
    _add_game_args(p)
    _add_common(p)
    p.add_argument("--format", choices=("dot", "json"), default="dot")
    p.add_argument("--level", choices=("position", "state"), default="position")
    p.add_argument("--highlight-minimal", action="store_true")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_graph)

    p = sub.add_parser("region", help="CSV sweep of scoring verdicts")
    _add_game_args(p, disks_required=False)
    _add_common(p)
    p.add_argument("--w23", type=_fraction, required=True)
    p.add_argument("--grid", required=True, help="lo:hi:step for both w12 and w13")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_region, _default_disks=2)

    p = sub.add_parser(
        "verify-paper",
        help="cross-check closed forms, strategies and tables against oracles",
    )
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_verify)

    return parser


def _fuse_grid_value(argv: list[str]) -> list[str]:
    """Join ``--grid`` with its value so ``--grid -6:6:1`` parses.

    argparse would otherwise read a value starting with ``-`` as an
    unknown option.
    """
    out = []
    skip_next_join = False
    for i, tok in enumerate(argv):
        if skip_next_join:
            out[-1] += "=" + tok
            skip_next_join = False
            continue
        if tok == "--grid" and i + 1 < len(argv):
            skip_next_join = True
        out.append(tok)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    args = parser.parse_args(_fuse_grid_value(list(argv)))
    if getattr(args, "disks", None) is None and hasattr(args, "_default_disks"):
        args.disks = args._default_disks
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (GameError, NotationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
