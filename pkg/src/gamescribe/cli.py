"""Command-line entry point.

Exit codes: 0 success, 2 game file not found, 3 parse/compile error,
4 playout move-cap exceeded.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .engine import PlayoutLimitExceeded
from .english import translate_game
from .pipeline import RunConfig, generate, load_game, playout_stats, write_index
from .registry import CompileError
from .sexpr import ParseError


def _add_game_args(sub: argparse.ArgumentParser, multiple: bool = False) -> None:
    sub.add_argument("--game", action="append" if multiple else None, required=True,
                     type=Path, help=".lud game description file"
                     + (" (repeatable)" if multiple else ""))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gamescribe",
        description="Generate illustrated manuals from board-game descriptions.")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="build a full manual for each game")
    _add_game_args(gen, multiple=True)
    gen.add_argument("--playouts", type=int, default=100)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", type=Path, default=Path("out"))
    gen.add_argument("--heuristics", type=Path, default=None,
                     help="optional (heuristics ...) file for the strategy section")
    gen.add_argument("--no-similar", action="store_true",
                     help="highlight only the selected move instead of all similar ones")
    gen.add_argument("--jobs", type=int, default=1,
                     help="worker threads for the playout batch")
    gen.add_argument("--format", choices=["html", "json"], default="html",
                     help="'json' additionally dumps traces and the move taxonomy")

    tr = sub.add_parser("translate", help="print the English translation")
    _add_game_args(tr)

    st = sub.add_parser("playout-stats", help="print outcome and coverage statistics")
    _add_game_args(st)
    st.add_argument("--playouts", type=int, default=100)
    st.add_argument("--seed", type=int, default=0)
    st.add_argument("--jobs", type=int, default=1)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "generate":
            names = []
            for game in args.game:
                config = RunConfig(
                    game_path=game, playouts=args.playouts, seed=args.seed,
                    out_dir=args.out, heuristics_path=args.heuristics,
                    similar_moves=not args.no_similar, jobs=args.jobs,
                    dump_json=args.format == "json")
                game_dir = generate(config)
                names.append(game_dir.name)
                print(f"wrote {game_dir / 'manual.html'}")
            if len(names) > 1:
                write_index(args.out, names)
        elif args.command == "translate":
            print(translate_game(load_game(args.game)), end="")
        elif args.command == "playout-stats":
            config = RunConfig(game_path=args.game, playouts=args.playouts,
                               seed=args.seed, jobs=args.jobs)
            print(playout_stats(config))
    except FileNotFoundError as exc:
        print(f"error: file not found: {exc.filename or exc}", file=sys.stderr)
        return 2
    except ParseError as exc:
        print(f"error: parse failed: {exc}", file=sys.stderr)
        return 3
    except CompileError as exc:
        print(f"error: compile failed: {exc}", file=sys.stderr)
        return 3
    except PlayoutLimitExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
