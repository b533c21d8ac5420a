"""Convert weighted play heuristics into plain-English strategy tips.

Heuristics arrive as an S-expression document, e.g.::

    (heuristics {
        (material "Pawn" 0.1)
        (mobility 0.3)
        (lineCompletion 3 0.5)
    })

Importance labels come from a fixed bucket table over |weight|:
[0, 0.2) very low, [0.2, 0.4) low, [0.4, 0.6) moderate, [0.6, 0.8) high,
[0.8, inf) very high.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .compiler import GameSpec
from .sexpr import Call, Collection, Number, RawNode, Symbol, parse


class HeuristicsError(Exception):
    pass


class UnknownPieceName(HeuristicsError):
    pass


@dataclass(frozen=True)
class HeuristicEntry:
    kind: str                  # Material | Mobility | LineCompletion
    weight: float
    piece: str | None = None   # Material only
    target_length: int | None = None  # LineCompletion only


_BUCKETS = [
    (0.2, "very low importance"),
    (0.4, "low importance"),
    (0.6, "moderate importance"),
    (0.8, "high importance"),
]


def importance_bucket(weight: float) -> str:
    if not math.isfinite(weight):
        raise HeuristicsError(f"weight must be finite, got {weight}")
    magnitude = abs(weight)
    for limit, phrase in _BUCKETS:
        if magnitude < limit:
            return phrase
    return "very high importance"


def _weight_of(node: RawNode) -> float:
    # Game files only use integer literals, so fractional weights arrive as
    # bare symbols like "0.15"; accept both.
    if isinstance(node, Number):
        return float(node.value)
    if isinstance(node, Symbol):
        try:
            return float(node.name)
        except ValueError:
            pass
    raise HeuristicsError(f"expected a numeric weight, got {node!r}")


def parse_heuristics(text: str) -> list[HeuristicEntry]:
    root = parse(text)
    if not (isinstance(root, Call) and root.head.name == "heuristics"):
        raise HeuristicsError("heuristics file must contain one (heuristics ...) form")
    entries: list[HeuristicEntry] = []
    items: tuple[RawNode, ...] = ()
    if root.args:
        arg = root.args[0]
        items = arg.items if isinstance(arg, Collection) else tuple(root.args)
    for item in items:
        if not isinstance(item, Call):
            raise HeuristicsError(f"expected a heuristic entry, got {item!r}")
        head = item.head.name
        if head == "material":
            entries.append(HeuristicEntry("Material", _weight_of(item.args[1]),
                                          piece=item.args[0].value))
        elif head == "mobility":
            entries.append(HeuristicEntry("Mobility", _weight_of(item.args[0])))
        elif head == "lineCompletion":
            entries.append(HeuristicEntry("LineCompletion", _weight_of(item.args[1]),
                                          target_length=item.args[0].value))
        else:
            raise HeuristicsError(f"unknown heuristic kind '{head}'")
    return entries


def explain_heuristics(entries: list[HeuristicEntry], spec: GameSpec) -> list[str]:
    """One advice line per nonzero-weight entry, in input order."""
    lines: list[str] = []
    bases = {p.base for p in spec.pieces} | {p.name for p in spec.pieces}
    for entry in entries:
        if entry.weight == 0:
            continue
        verb = "maximise" if entry.weight > 0 else "minimise"
        importance = importance_bucket(entry.weight)
        if entry.kind == "Material":
            if entry.piece not in bases:
                raise UnknownPieceName(f"no piece named '{entry.piece}' in this game")
            lines.append(f"Try to {verb} the number of {entry.piece}(s) you control "
                         f"({importance})")
        elif entry.kind == "Mobility":
            lines.append(f"Try to {verb} the number of moves available to you "
                         f"({importance})")
        elif entry.kind == "LineCompletion":
            if entry.weight > 0:
                lead = f"Try to work towards completing lines of {entry.target_length}"
            else:
                lead = f"Try to avoid completing lines of {entry.target_length}"
            lines.append(f"{lead} of your pieces ({importance})")
        else:
            raise HeuristicsError(f"unknown heuristic kind '{entry.kind}'")
    return lines
