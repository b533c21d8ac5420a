"""Move signatures, distinct-move identification, and ending collection.

A move's signature is the four-property tuple (mover, piece, origin rule,
action types).  The mover component only participates for games whose
players have different piece rules; see ``players_have_distinct_rules``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .compiler import GameSpec
from .engine import GameState, Move, PlayoutTrace, legal_moves
from .english import draw_fallback_sentence, translate_node
from .sexpr import Call, RawNode, children, print_canonical


@dataclass(frozen=True, order=True)
class MoveSignature:
    mover: int | None       # None when players share piece rules
    piece: str | None       # None for piece-less moves (Pass/Swap class)
    origin_id: int
    action_types: tuple[str, ...]

    def sort_key(self):
        return (self.mover if self.mover is not None else -1,
                self.piece or "", self.origin_id, self.action_types)


@dataclass(frozen=True)
class DistinctMove:
    signature: MoveSignature
    exemplar: tuple[int, int]  # (playout seed, move index) of first occurrence
    rule_text: str


@dataclass(frozen=True)
class EndingExample:
    result_key: tuple[str, tuple[int, ...], int | None]  # (outcome, players, end id)
    exemplar_seed: int
    text: str
    winning_sites: tuple[int, ...] | None


def _canonical_rule(node: RawNode) -> str:
    # Owner-index renaming: strip digit suffixes from quoted piece names and
    # collapse P1/P2/... symbols so per-player copies of a rule compare equal.
    text = print_canonical(node)
    text = re.sub(r'"([A-Za-z]+)\d+"', r'"\1"', text)
    return re.sub(r"\bP\d+\b", "P", text)


def _contains_conditional(node: RawNode) -> bool:
    if isinstance(node, Call) and node.head.name == "if":
        return True
    return any(_contains_conditional(c) for c in children(node))


def players_have_distinct_rules(spec: GameSpec) -> bool:
    """Whether the mover property participates in move signatures.

    True when (a) players' per-piece move rules differ after owner-index
    renaming, or (b) the play rule contains a conditional branch, which can
    route different movers through different move ludemes.
    """
    cached = spec._cache.get("distinct_rules")
    if cached is not None:
        return cached
    per_player: dict[int, set[str]] = {p: set() for p in range(1, spec.player_count + 1)}
    for piece in spec.pieces:
        if piece.owner > 0 and piece.move_rule_id is not None:
            per_player[piece.owner].add(_canonical_rule(spec.node(piece.move_rule_id)))
    rule_sets = list(per_player.values())
    differ = any(s != rule_sets[0] for s in rule_sets[1:])
    result = differ or _contains_conditional(spec.node(spec.play_id))
    spec._cache["distinct_rules"] = result
    return result


def move_signature(move: Move, spec: GameSpec) -> MoveSignature:
    mover = move.mover if players_have_distinct_rules(spec) else None
    return MoveSignature(mover, move.piece, move.origin_id, move.action_types)


def collect_distinct(traces: list[PlayoutTrace], spec: GameSpec) -> list[DistinctMove]:
    """One DistinctMove per unique signature, exemplar at lowest (seed, index)."""
    first: dict[MoveSignature, tuple[int, int]] = {}
    for trace in traces:
        for index, move in enumerate(trace.moves):
            sig = move_signature(move, spec)
            occurrence = (trace.seed, index)
            if sig not in first or occurrence < first[sig]:
                first[sig] = occurrence
    out = [
        DistinctMove(sig, first[sig], translate_node(spec, sig.origin_id))
        for sig in first
    ]
    out.sort(key=lambda d: d.signature.sort_key())
    return out


def similar_legal_moves(state: GameState, selected: Move, spec: GameSpec) -> list[Move]:
    """Every legal move sharing the selected move's signature (inclusive)."""
    target = move_signature(selected, spec)
    return [m for m in legal_moves(spec, state)
            if move_signature(m, spec) == target]


def collect_endings(traces: list[PlayoutTrace], spec: GameSpec) -> list[EndingExample]:
    """One example per distinct (outcome, players, end ludeme) result key."""
    best: dict[tuple, PlayoutTrace] = {}
    for trace in traces:
        outcome = trace.outcome
        key = (outcome.outcome, outcome.players, outcome.end_id)
        if key not in best or trace.seed < best[key].seed:
            best[key] = trace
    out = []
    for key in sorted(best, key=lambda k: (k[0], k[1], -1 if k[2] is None else k[2])):
        trace = best[key]
        if key[2] is None:
            text = draw_fallback_sentence()
        else:
            text = translate_node(spec, key[2])
        out.append(EndingExample(key, trace.seed, text, trace.outcome.winning_sites))
    return out


def coverage_report(distinct: list[DistinctMove], spec: GameSpec) -> dict:
    """Compare exercised origin ludemes against every (move ...) in the spec."""
    exercised = {d.signature.origin_id for d in distinct}
    all_moves = spec.move_ludeme_ids()
    missing = [lid for lid in all_moves if lid not in exercised]
    return {
        "move_ludemes": all_moves,
        "exercised": sorted(exercised),
        "unexercised": missing,
        "complete": not missing,
    }
