"""Recursive translation of compiled game rules into structured English.

Every supported ludeme has a phrase template; templates consume the
translated fragments of their children, so translating the whole game is
one recursive walk.  Output section order: header, regions, pieces, piece
rules, turn order, setup, Rules, Aim.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .compiler import GameSpec
from .sexpr import Call, Collection, RawNode


class MissingTemplate(Exception):
    pass


NUMBER_WORDS = {
    1: "one", 2: "two", 3: "three", 4: "four", 5: "five", 6: "six",
    7: "seven", 8: "eight", 9: "nine", 10: "ten", 11: "eleven", 12: "twelve",
}

PLURAL_EXCEPTIONS = {"Cross": "Crosses"}

DIRECTION_WORDS = {
    "Adjacent": "adjacent", "Orthogonal": "orthogonal", "Diagonal": "diagonal",
    "Forward": "forward", "FL": "forward-left", "FR": "forward-right",
}


@dataclass
class TranslationContext:
    """Carries the current document section and the fixed player-name table."""

    section: str = "rules"
    player_names: dict[int, str] = field(default_factory=dict)

    @staticmethod
    def for_spec(spec: GameSpec, section: str = "rules") -> "TranslationContext":
        names = {p: f"player {number_word(p)}" for p in range(1, spec.player_count + 1)}
        return TranslationContext(section=section, player_names=names)


def number_word(n: int) -> str:
    return NUMBER_WORDS.get(n, str(n))


def plural(name: str) -> str:
    return PLURAL_EXCEPTIONS.get(name, name + "s")


def join_list(items: list[str]) -> str:
    """Comma-separated list with a terminal " and "."""
    if not items:
        return ""
    if len(items) == 1:
        return items[0]
    return ", ".join(items[:-1]) + " and " + items[-1]


def _join_or(items: list[str]) -> str:
    if not items:
        return ""
    if len(items) == 1:
        return items[0]
    return ", ".join(items[:-1]) + " or " + items[-1]


def _sentence(fragment: str) -> str:
    return fragment[0].upper() + fragment[1:] + "."


def _board_phrase(spec: GameSpec) -> str:
    board = spec.board
    if board.shape in ("square", "rectangle"):
        return f"{board.cols}x{board.rows} rectangle board with square tiling"
    if board.shape == "hexDiamond":
        return f"{board.cols}x{board.rows} diamond board with hexagonal tiling"
    raise MissingTemplate(f"no phrase for board shape '{board.shape}'")


def _site_set_phrase(node: Call) -> str:
    kind = tuple(a.name for a in node.args)
    if kind == ("Empty",):
        return "the set of empty cells"
    if len(kind) == 2 and kind[0] == "Side":
        return f"the {kind[1]} side"
    raise MissingTemplate(f"no phrase for (sites {' '.join(kind)})")


def _directions_phrase(node: Call) -> str:
    dirs = None
    for a in node.args:
        if isinstance(a, Call) and a.head.name == "directions":
            dirs = a
            break
    if dirs is None:
        names = ["Adjacent"]
    else:
        arg = dirs.args[0]
        names = [s.name for s in arg.items] if isinstance(arg, Collection) else [arg.name]
    return _join_or([DIRECTION_WORDS.get(n, n.lower()) for n in names])


def _then_suffix(node: Call) -> str:
    for a in node.args:
        if isinstance(a, Call) and a.head.name == "then":
            effect = a.args[0]
            if isinstance(effect, Call) and effect.head.name == "moveAgain":
                return " then move again"
            raise MissingTemplate(f"no phrase for effect '{effect}'")
    return ""


def _find_call(node: Call, head: str) -> Call | None:
    for a in node.args:
        if isinstance(a, Call) and a.head.name == head:
            return a
    return None


def _move_fragment(node: Call, ctx: TranslationContext, spec: GameSpec,
                   *, piece_subject: bool) -> str:
    """Lower-case verb phrase for a (move ...) or (forEach Piece) ludeme.

    With ``piece_subject`` the phrase follows a plural piece-name subject
    ("Queens slide ..."); otherwise it is imperative ("add one of ...").
    """
    if node.head.name == "forEach":
        return "move one of your pieces"
    kind = node.args[0].name
    if kind == "Add":
        to = _find_call(node, "to")
        target = _site_set_phrase(to.args[0]) if to else "the board"
        return f"add one of your pieces to {target}" + _then_suffix(node)
    if kind == "Slide":
        subject = "" if piece_subject else " one of your pieces"
        return (f"slide{subject} from the location of the piece in the "
                f"{_directions_phrase(node)} direction through the set of empty cells"
                + _then_suffix(node))
    if kind == "Step":
        subject = "" if piece_subject else " one of your pieces"
        return (f"step{subject} to an empty or enemy-occupied cell in the "
                f"{_directions_phrase(node)} direction" + _then_suffix(node))
    if kind == "Shoot":
        piece = _find_call(node, "piece")
        name = piece.args[0].value if piece else "a piece"
        return f"shoot the piece {name}" + _then_suffix(node)
    raise MissingTemplate(f"no phrase for move kind '{kind}'")


def _count_phrase(node: Call) -> str:
    mode = node.args[0].name
    if mode == "Moves":
        return "the number of moves"
    raise MissingTemplate(f"no phrase for (count {mode})")


def _condition_phrase(node: Call, ctx: TranslationContext, spec: GameSpec,
                      *, depth: int = 0) -> str:
    head = node.head.name
    if head == "is":
        mode = node.args[0].name
        if mode == "Even":
            return f"{_count_phrase(node.args[1])} is even"
        if mode == "Line":
            n = node.args[1].value
            return f"a player places {n} of their pieces in an adjacent direction line"
        if mode == "Connected":
            return "the region(s) of the moving player are connected"
        if mode == "In":
            return "the moving player reaches their target region"
        raise MissingTemplate(f"no phrase for (is {mode} ...)")
    if head == "no":
        return "the next player cannot move"
    if head in ("or", "and"):
        parts = []
        for sub in node.args:
            phrase = _condition_phrase(sub, ctx, spec, depth=depth + 1)
            # Parenthesise nested compound operands to keep grouping unambiguous.
            if sub.head.name in ("or", "and"):
                phrase = f"({phrase})"
            parts.append(phrase)
        if head == "or":
            if len(parts) == 2:
                return f"either {parts[0]} or {parts[1]}"
            return "either " + ", ".join(parts[:-1]) + "; otherwise " + parts[-1]
        return " and ".join(parts)
    raise MissingTemplate(f"no phrase for condition '{head}'")


def _result_phrase(node: Call, ctx: TranslationContext) -> str:
    who, outcome = node.args[0].name, node.args[1].name
    if who == "Mover":
        subject = "the moving player"
    elif who == "Next":
        subject = "the next player"
    else:
        subject = ctx.player_names.get(int(who[1:]), who)
    if outcome == "Win":
        return f"{subject} wins"
    if outcome == "Loss":
        return f"{subject} loses"
    return "the game is a draw"


def _play_fragment(node: RawNode, ctx: TranslationContext, spec: GameSpec) -> str:
    if not isinstance(node, Call):
        raise MissingTemplate(f"no phrase for {node!r}")
    head = node.head.name
    if head in ("move", "forEach"):
        return _move_fragment(node, ctx, spec, piece_subject=False)
    if head == "if":
        cond = _condition_phrase(node.args[0], ctx, spec)
        then = _play_fragment(node.args[1], ctx, spec)
        if len(node.args) > 2:
            other = _play_fragment(node.args[2], ctx, spec)
            return f"if {cond}, {then}, else {other}"
        return f"if {cond}, {then}"
    raise MissingTemplate(f"no phrase for play ludeme '{head}'")


def _end_sentence(rule: Call, ctx: TranslationContext, spec: GameSpec) -> str:
    cond = _condition_phrase(rule.args[0], ctx, spec)
    result = _result_phrase(rule.args[1], ctx)
    return f"If {cond}, {result}."


def draw_fallback_sentence() -> str:
    """English for the implicit no-moves draw (no end ludeme to translate)."""
    return "If no player can move, the game ends in a draw."


def translate_node(spec: GameSpec, node, section: str = "rules") -> str:
    """Translate a single ludeme (node or ludeme id) into a text fragment."""
    if isinstance(node, int):
        node = spec.node(node)
    ctx = TranslationContext.for_spec(spec, section)
    if not isinstance(node, Call):
        raise MissingTemplate(f"no template for {node!r}")
    head = node.head.name
    if head == "board":
        return f"on a {_board_phrase(spec)}"
    if head in ("move", "forEach"):
        return _sentence(_move_fragment(node, ctx, spec, piece_subject=False))
    if head == "if":
        branch = node.args[1]
        if isinstance(branch, Call) and branch.head.name == "result":
            return _end_sentence(node, ctx, spec)
        return _sentence(_play_fragment(node, ctx, spec))
    if head in ("is", "no", "or", "and"):
        return _condition_phrase(node, ctx, spec)
    if head == "result":
        return _result_phrase(node, ctx)
    if head == "sites":
        return _site_set_phrase(node)
    if head == "count":
        return _count_phrase(node)
    if head == "swap":
        # Compiled and recognised, but the pie rule contributes no manual text.
        return ""
    raise MissingTemplate(f"no template for ludeme '{head}'")


def translate_game(spec: GameSpec) -> str:
    """Full English translation, one section per line group."""
    ctx = TranslationContext.for_spec(spec)
    lines: list[str] = []

    lines.append(f'The game "{spec.name}" is played by '
                 f"{number_word(spec.player_count)} players on a {_board_phrase(spec)}.")

    if spec.regions:
        lines.append("Regions:")
        for region in spec.regions:
            tag = f"P{region.owner}"
            items = [f"Region{tag}: the {ss.kind[1]} side for {tag}"
                     for ss in region.site_sets]
            lines.append("    " + join_list(items))

    piece_sentences: list[str] = []
    seen_each: set[str] = set()
    neutral_bases: list[str] = []
    for piece in spec.pieces:
        if piece.from_each:
            if piece.base not in seen_each:
                seen_each.add(piece.base)
                piece_sentences.append(f"All players play with {plural(piece.base)}.")
        elif piece.owner == 0:
            neutral_bases.append(piece.base)
        else:
            name = ctx.player_names[piece.owner]
            piece_sentences.append(f"{name[0].upper()}{name[1:]} plays with "
                                   f"{plural(piece.base)}.")
    if neutral_bases:
        piece_sentences.append("The following pieces are neutral: "
                               f"{join_list([plural(b) for b in neutral_bases])}.")
    if piece_sentences:
        lines.append(" ".join(piece_sentences))

    rule_lines: list[str] = []
    seen_rules: set[tuple[str, int]] = set()
    for piece in spec.pieces:
        if piece.move_rule_id is None:
            continue
        key = (piece.base, piece.move_rule_id)
        if key in seen_rules:
            continue
        seen_rules.add(key)
        fragment = _move_fragment(spec.node(piece.move_rule_id), ctx, spec,
                                  piece_subject=True)
        rule_lines.append(f"     {plural(piece.base)} {fragment}.")
    if rule_lines:
        lines.append("Rules for Pieces:")
        lines.extend(rule_lines)

    lines.append("Players take turns moving.")

    if spec.start_placements:
        lines.append("Setup:")
        for placement in spec.start_placements:
            piece = spec.piece_named(placement.piece_name)
            if piece.owner == 0:
                owner_phrase = ""
            else:
                owner_phrase = f" for {ctx.player_names[piece.owner]}"
            lines.append(f"     Place a {piece.base}{owner_phrase} on sites: "
                         f"{join_list(list(placement.labels))}.")

    lines.append("Rules:")
    lines.append("     " + _sentence(_play_fragment(spec.node(spec.play_id), ctx, spec)))

    lines.append("Aim:")
    for rule in spec.end_rules:
        end_node = spec.node(rule.end_id)
        lines.append("     " + _end_sentence(end_node, ctx, spec))

    return "\n".join(lines) + "\n"
