"""Compile a parsed game description into a typed GameSpec.

The compiler validates the tree against the ludeme registry, numbers every
node into a ludeme table (preorder ids), builds the board graph, expands
``Each``/``Neutral`` piece declarations, resolves region and start-placement
sites, and records the play and end rules by ludeme id.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import boards
from .boards import BoardGraph
from .registry import (ArityMismatch, BadArgumentKind, CompileError, Registry, UnsupportedShape,
                       default_registry)
from .sexpr import Call, Collection, RawNode, Symbol, children


@dataclass(frozen=True)
class PieceSpec:
    name: str          # full name, e.g. "Disc", "Queen1", "Dot0"
    base: str          # declared name, e.g. "Queen"
    owner: int         # 0 = neutral
    move_rule_id: int | None = None
    from_each: bool = False


@dataclass(frozen=True)
class SiteSet:
    node_id: int
    kind: tuple[str, ...]      # e.g. ("Side", "NE")
    sites: tuple[int, ...]


@dataclass(frozen=True)
class RegionSpec:
    owner: int
    site_sets: tuple[SiteSet, ...]


@dataclass(frozen=True)
class StartPlacement:
    piece_name: str
    labels: tuple[str, ...]
    sites: tuple[int, ...]


@dataclass(frozen=True)
class EndRule:
    end_id: int      # id of the (if ...) node under (end ...)
    cond_id: int
    who: str         # Mover | Next | P1..P4
    outcome: str     # Win | Loss | Draw


@dataclass
class GameSpec:
    name: str
    player_count: int
    board: BoardGraph
    pieces: list[PieceSpec]
    regions: list[RegionSpec]
    swap_meta: bool
    start_placements: list[StartPlacement]
    play_id: int
    end_rules: list[EndRule]
    root: RawNode
    table: dict[int, tuple[RawNode, int | None]] = field(default_factory=dict)
    _ids: dict[int, int] = field(default_factory=dict)  # id(node) -> ludeme id
    _cache: dict = field(default_factory=dict)          # derived-analysis scratch

    def node(self, ludeme_id: int) -> RawNode:
        return self.table[ludeme_id][0]

    def id_of(self, node: RawNode) -> int:
        return self._ids[id(node)]

    def pieces_of(self, owner: int) -> list[PieceSpec]:
        return [p for p in self.pieces if p.owner == owner]

    def piece_named(self, name: str) -> PieceSpec | None:
        for p in self.pieces:
            if p.name == name:
                return p
        return None

    def regions_of(self, owner: int) -> list[RegionSpec]:
        return [r for r in self.regions if r.owner == owner]

    def move_ludeme_ids(self) -> list[int]:
        """Ids of every (move ...) call in the description, ascending."""
        return sorted(lid for lid, (node, _) in self.table.items()
                      if isinstance(node, Call) and node.head.name == "move")


def _number_tree(root: RawNode) -> tuple[dict[int, tuple[RawNode, int | None]], dict[int, int]]:
    table: dict[int, tuple[RawNode, int | None]] = {}
    ids: dict[int, int] = {}
    counter = 0

    def visit(node: RawNode, parent: int | None) -> None:
        nonlocal counter
        lid = counter
        counter += 1
        table[lid] = (node, parent)
        ids[id(node)] = lid
        for child in children(node):
            visit(child, lid)

    visit(root, None)
    return table, ids


def _player_index(sym: str) -> int:
    return int(sym[1:])


def _as_items(node: RawNode) -> tuple[RawNode, ...]:
    if isinstance(node, Collection):
        return node.items
    return (node,)


def build_board(board_node: Call) -> BoardGraph:
    """Construct the board graph for a ``(board <shape>)`` ludeme."""
    shape = board_node.args[0]
    assert isinstance(shape, Call)
    name = shape.head.name
    if name == "square":
        n = shape.args[0].value
        return boards.build_square(n, n)
    if name == "rectangle":
        w, h = shape.args[0].value, shape.args[1].value
        return boards.build_square(h, w, shape="rectangle")
    if name == "hex":
        return boards.build_hex_diamond(shape.args[1].value)
    raise UnsupportedShape(f"unsupported board shape '{name}'", shape.span)


class _Compiler:
    def __init__(self, registry: Registry):
        self.registry = registry

    def compile(self, tree: RawNode) -> GameSpec:
        if not (isinstance(tree, Call) and tree.head.name == "game"):
            raise CompileError("top-level form must be (game ...)",
                               getattr(tree, "span", (0, 0)))
        self.registry.validate_tree(tree)
        table, ids = _number_tree(tree)
        self.ids = ids

        name = tree.args[0].value
        players_node, equipment_node, rules_node = tree.args[1], tree.args[2], tree.args[3]
        player_count = players_node.args[0].value
        if player_count < 1:
            raise BadArgumentKind("player count must be at least 1", players_node.span)

        board, piece_nodes, region_nodes = self._split_equipment(equipment_node)
        pieces = self._expand_pieces(piece_nodes, player_count)
        regions = [self._compile_region(node, board, player_count) for node in region_nodes]

        swap_meta = False
        start_placements: list[StartPlacement] = []
        play_id: int | None = None
        end_rules: list[EndRule] = []
        for section in rules_node.args:
            head = section.head.name
            if head == "meta":
                swap_meta = any(isinstance(m, Call) and m.head.name == "swap"
                                for m in section.args)
            elif head == "start":
                for place in _as_items(section.args[0]):
                    start_placements.append(self._compile_place(place, board, pieces))
            elif head == "play":
                play_id = ids[id(section.args[0])]
            elif head == "end":
                for rule in _as_items(section.args[0]):
                    end_rules.append(self._compile_end_rule(rule))
        assert play_id is not None  # registry guarantees a play section

        spec = GameSpec(
            name=name, player_count=player_count, board=board, pieces=pieces,
            regions=regions, swap_meta=swap_meta, start_placements=start_placements,
            play_id=play_id, end_rules=end_rules, root=tree, table=table, _ids=ids,
        )
        self._check_start_conflicts(spec)
        return spec

    def _split_equipment(self, equipment: Call):
        board = None
        piece_nodes: list[Call] = []
        region_nodes: list[Call] = []
        for item in _as_items(equipment.args[0]):
            if item.head.name == "board":
                board = build_board(item)
            elif item.head.name == "piece":
                piece_nodes.append(item)
            elif item.head.name == "regions":
                region_nodes.append(item)
        if board is None:
            raise CompileError("equipment has no board", equipment.span)
        return board, piece_nodes, region_nodes

    def _expand_pieces(self, piece_nodes: list[Call], player_count: int) -> list[PieceSpec]:
        pieces: list[PieceSpec] = []
        for node in piece_nodes:
            base = node.args[0].value
            # Owner is optional in the registry (Shoot reuses (piece "X") as a
            # bare reference) but mandatory for equipment declarations.
            if len(node.args) < 2 or not isinstance(node.args[1], Symbol):
                raise ArityMismatch("equipment piece needs an owner symbol", node.span)
            owner_sym = node.args[1].name
            rule_id = None
            if len(node.args) > 2:
                rule_id = self.ids[id(node.args[2])]
            if owner_sym == "Each":
                for p in range(1, player_count + 1):
                    pieces.append(PieceSpec(f"{base}{p}", base, p, rule_id, True))
            elif owner_sym == "Neutral":
                pieces.append(PieceSpec(f"{base}0", base, 0, rule_id, False))
            else:
                owner = _player_index(owner_sym)
                if owner > player_count:
                    raise BadArgumentKind(
                        f"piece owner {owner_sym} exceeds player count", node.args[1].span)
                pieces.append(PieceSpec(base, base, owner, rule_id, False))
        return pieces

    def _compile_region(self, node: Call, board: BoardGraph, player_count: int) -> RegionSpec:
        owner = _player_index(node.args[0].name)
        if owner > player_count:
            raise BadArgumentKind(f"region owner {node.args[0].name} exceeds player count",
                                  node.args[0].span)
        sets = []
        for sites_node in _as_items(node.args[1]):
            sets.append(self._compile_site_set(sites_node, board))
        return RegionSpec(owner, tuple(sets))

    def _compile_site_set(self, node: Call, board: BoardGraph) -> SiteSet:
        kind = tuple(a.name for a in node.args)
        if len(kind) == 2 and kind[0] == "Side":
            side = kind[1]
            if side not in board.sides:
                raise BadArgumentKind(f"board has no '{side}' side", node.span)
            return SiteSet(self.ids[id(node)], kind, tuple(board.sides[side]))
        raise BadArgumentKind(f"(sites {' '.join(kind)}) is not a static site set", node.span)

    def _compile_place(self, node: Call, board: BoardGraph,
                       pieces: list[PieceSpec]) -> StartPlacement:
        piece_name = node.args[0].value
        if not any(p.name == piece_name for p in pieces):
            raise BadArgumentKind(f"placement of undeclared piece '{piece_name}'",
                                  node.args[0].span)
        labels = tuple(t.value for t in _as_items(node.args[1]))
        sites = []
        for label, t in zip(labels, _as_items(node.args[1])):
            site = board.site_by_label(label)
            if site is None:
                raise BadArgumentKind(f"no site labelled '{label}' on the board", t.span)
            sites.append(site)
        return StartPlacement(piece_name, labels, tuple(sites))

    def _compile_end_rule(self, rule: Call) -> EndRule:
        # Registry guarantees the shape (if <condition> (result <who> <outcome>)).
        cond, result = rule.args[0], rule.args[1]
        if not (isinstance(result, Call) and result.head.name == "result"):
            raise BadArgumentKind("end rule branch must be a (result ...) ludeme", result.span)
        return EndRule(
            end_id=self.ids[id(rule)],
            cond_id=self.ids[id(cond)],
            who=result.args[0].name,
            outcome=result.args[1].name,
        )

    def _check_start_conflicts(self, spec: GameSpec) -> None:
        seen: dict[int, str] = {}
        for placement in spec.start_placements:
            for site in placement.sites:
                if site in seen:
                    raise CompileError(
                        f"start placement conflict at {spec.board.sites[site].label}")
                seen[site] = placement.piece_name


def compile_game(tree: RawNode, registry: Registry | None = None) -> GameSpec:
    """Validate and compile a parsed ``(game ...)`` tree."""
    return _Compiler(registry or default_registry()).compile(tree)
