"""Compile board-game descriptions and generate illustrated manuals."""

from .compiler import GameSpec, compile_game
from .engine import (GameState, Move, PlayoutTrace, apply_move, initial_state,
                     legal_moves, random_playout)
from .english import translate_game
from .sexpr import parse, print_canonical

__all__ = [
    "GameSpec", "GameState", "Move", "PlayoutTrace",
    "compile_game", "parse", "print_canonical",
    "initial_state", "legal_moves", "apply_move", "random_playout",
    "translate_game",
]
