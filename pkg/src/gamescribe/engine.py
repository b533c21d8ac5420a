"""Tree-walking interpreter for compiled game specs.

Generates legal moves, applies them, evaluates end conditions, and runs
seeded random playouts.  All randomness comes from a fixed xorshift64*
generator so traces replay identically on any platform.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .compiler import GameSpec
from .sexpr import Call, Collection


class EngineError(Exception):
    pass


class PlacementConflict(EngineError):
    pass


class IllegalMove(EngineError):
    pass


class UnsupportedPlayRule(EngineError):
    pass


class UnsupportedCondition(EngineError):
    pass


class PlayoutLimitExceeded(EngineError):
    pass


PLAYOUT_MOVE_CAP = 10_000

_MASK = (1 << 64) - 1


def _splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK
    z = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return (z ^ (z >> 31)) & _MASK


class XorShift64Star:
    """Deterministic 64-bit PRNG (xorshift64*, state seeded via splitmix64)."""

    def __init__(self, seed: int):
        state = _splitmix64(seed & _MASK)
        self._state = state if state else 0x9E3779B97F4A7C15

    def next_uint64(self) -> int:
        x = self._state
        x ^= x >> 12
        x ^= (x << 25) & _MASK
        x ^= x >> 27
        self._state = x
        return (x * 0x2545F4914F6CDD1D) & _MASK

    def randrange(self, n: int) -> int:
        return self.next_uint64() % n


@dataclass(frozen=True)
class Action:
    kind: str  # Add | Remove | Move | Score | SetMoverAgain
    piece: str | None = None
    site: int | None = None
    from_site: int | None = None
    to_site: int | None = None
    player: int | None = None
    value: int | None = None


@dataclass(frozen=True)
class Move:
    mover: int
    piece: str | None
    origin_id: int  # ludeme id of the (move ...) node that generated it
    actions: tuple[Action, ...]
    from_site: int | None
    to_site: int | None

    @property
    def action_types(self) -> tuple[str, ...]:
        return tuple(a.kind for a in self.actions)


@dataclass(frozen=True)
class EndMatch:
    end_id: int | None  # None for the implicit draw-by-no-moves fallback
    players: tuple[int, ...]
    outcome: str  # Win | Loss | Draw
    final_move: "Move | None"
    winning_sites: tuple[int, ...] | None = None


@dataclass
class GameState:
    contents: list  # per-site (piece name, owner) or None
    mover: int
    move_count: int
    scores: tuple[int, ...]
    terminal: EndMatch | None = None
    last_move: Move | None = None
    _legal: "list[Move] | None" = field(default=None, repr=False, compare=False)


@dataclass(frozen=True)
class PlayoutTrace:
    seed: int
    moves: tuple[Move, ...]
    outcome: EndMatch
    final_state: GameState = field(compare=False, repr=False, default=None)


def initial_state(spec: GameSpec) -> GameState:
    contents: list = [None] * spec.board.site_count
    for placement in spec.start_placements:
        piece = spec.piece_named(placement.piece_name)
        for site in placement.sites:
            if contents[site] is not None:
                raise PlacementConflict(
                    f"two pieces placed at {spec.board.sites[site].label}")
            contents[site] = (piece.name, piece.owner)
    return GameState(contents=contents, mover=1, move_count=0,
                     scores=(0,) * spec.player_count)


def _next_player(spec: GameSpec, player: int) -> int:
    return player % spec.player_count + 1


def _find_arg(node: Call, head: str) -> Call | None:
    for a in node.args:
        if isinstance(a, Call) and a.head.name == head:
            return a
    return None


def _mover_piece(spec: GameSpec, mover: int) -> str | None:
    owned = spec.pieces_of(mover)
    return owned[0].name if owned else None


def _direction_names(node: Call) -> list[str]:
    dirs = _find_arg(node, "directions")
    if dirs is None:
        return ["Adjacent"]
    arg = dirs.args[0]
    if isinstance(arg, Collection):
        return [s.name for s in arg.items]
    return [arg.name]


def _resolve_site_set(spec: GameSpec, state: GameState, sites_node: Call) -> list[int]:
    kind = tuple(a.name for a in sites_node.args)
    if kind == ("Empty",):
        return [i for i, c in enumerate(state.contents) if c is None]
    if len(kind) == 2 and kind[0] == "Side":
        return list(spec.board.sides[kind[1]])
    raise UnsupportedPlayRule(f"cannot resolve (sites {' '.join(kind)})")


def legal_moves(spec: GameSpec, state: GameState) -> list[Move]:
    """All legal moves for the state's mover, in deterministic order."""
    if state._legal is None:
        state._legal = _generate(spec, state, spec.node(spec.play_id), None)
    return state._legal


def _generate(spec: GameSpec, state: GameState, node, ctx) -> list[Move]:
    if not isinstance(node, Call):
        raise UnsupportedPlayRule(f"unexpected play expression: {node!r}")
    head = node.head.name
    if head == "move":
        return _generate_move(spec, state, node, ctx)
    if head == "forEach":
        moves: list[Move] = []
        for site, content in enumerate(state.contents):
            if content is None or content[1] != state.mover:
                continue
            piece = spec.piece_named(content[0])
            if piece is None or piece.move_rule_id is None:
                continue
            moves.extend(_generate(spec, state, spec.node(piece.move_rule_id),
                                   (content[0], site)))
        return moves
    if head == "if":
        ok = eval_condition(spec, state, node.args[0], state.mover)
        if ok:
            return _generate(spec, state, node.args[1], ctx)
        if len(node.args) > 2:
            return _generate(spec, state, node.args[2], ctx)
        return []
    raise UnsupportedPlayRule(f"unsupported play ludeme '{head}'")


def _generate_move(spec: GameSpec, state: GameState, node: Call, ctx) -> list[Move]:
    kind = node.args[0].name
    origin = spec.id_of(node)
    mover = state.mover
    again = False
    then = _find_arg(node, "then")
    if then is not None and isinstance(then.args[0], Call) \
            and then.args[0].head.name == "moveAgain":
        again = True

    moves: list[Move] = []
    if kind == "Add":
        to = _find_arg(node, "to")
        targets = _resolve_site_set(spec, state, to.args[0]) if to else []
        piece = _mover_piece(spec, mover)
        for site in targets:
            actions = [Action("Add", piece=piece, site=site)]
            moves.append(Move(mover, piece, origin, tuple(actions), site, site))
    elif kind == "Step":
        if ctx is None:
            raise UnsupportedPlayRule("(move Step ...) needs a piece context")
        piece, site = ctx
        for name in _direction_names(node):
            for vec in spec.board.direction_vectors(name, mover):
                target = spec.board.offset(site, vec)
                if target is None:
                    continue
                occupant = state.contents[target]
                if occupant is None:
                    actions = [Action("Move", from_site=site, to_site=target)]
                elif occupant[1] not in (mover, 0):
                    actions = [Action("Remove", site=target),
                               Action("Move", from_site=site, to_site=target)]
                else:
                    continue
                moves.append(Move(mover, piece, origin, tuple(actions), site, target))
    elif kind == "Slide":
        if ctx is None:
            raise UnsupportedPlayRule("(move Slide ...) needs a piece context")
        piece, site = ctx
        for ray in spec.board.rays[site]:
            for target in ray:
                if state.contents[target] is not None:
                    break
                actions = [Action("Move", from_site=site, to_site=target)]
                moves.append(Move(mover, piece, origin, tuple(actions), site, target))
    elif kind == "Shoot":
        piece_node = _find_arg(node, "piece")
        if piece_node is None:
            raise UnsupportedPlayRule("(move Shoot ...) needs a projectile piece")
        projectile = piece_node.args[0].value
        last = state.last_move
        if last is None or last.to_site is None:
            return []
        for ray in spec.board.rays[last.to_site]:
            for target in ray:
                if state.contents[target] is not None:
                    break
                actions = [Action("Add", piece=projectile, site=target)]
                moves.append(Move(mover, projectile, origin, tuple(actions),
                                  last.to_site, target))
    else:
        raise UnsupportedPlayRule(f"unsupported move kind '{kind}'")

    if again:
        moves = [Move(m.mover, m.piece, m.origin_id,
                      m.actions + (Action("SetMoverAgain"),), m.from_site, m.to_site)
                 for m in moves]
    return moves


def apply_move(state: GameState, move: Move, spec: GameSpec, *,
               validate: bool = True) -> GameState:
    """Apply ``move`` and return the successor state with end rules evaluated."""
    if state.terminal is not None:
        raise IllegalMove("state is terminal")
    if validate and move not in legal_moves(spec, state):
        raise IllegalMove(f"move not legal in this state: {move}")
    contents = list(state.contents)
    scores = list(state.scores)
    again = False
    for action in move.actions:
        if action.kind == "Add":
            piece = spec.piece_named(action.piece)
            contents[action.site] = (piece.name, piece.owner)
        elif action.kind == "Remove":
            contents[action.site] = None
        elif action.kind == "Move":
            contents[action.to_site] = contents[action.from_site]
            contents[action.from_site] = None
        elif action.kind == "Score":
            scores[action.player - 1] = action.value
        elif action.kind == "SetMoverAgain":
            again = True
        else:
            raise IllegalMove(f"unknown action kind '{action.kind}'")
    mover = move.mover if again else _next_player(spec, move.mover)
    new_state = GameState(contents=contents, mover=mover,
                          move_count=state.move_count + 1,
                          scores=tuple(scores), last_move=move)
    new_state.terminal = check_end(spec, new_state, move)
    return new_state


def _eval(spec: GameSpec, state: GameState, cond: Call,
          mover: int) -> tuple[bool, tuple[int, ...] | None]:
    head = cond.head.name
    if head == "is":
        mode = cond.args[0].name
        if mode == "Even":
            return state.move_count % 2 == 0, None
        if mode == "Line":
            return _eval_line(spec, state, cond.args[1].value)
        if mode == "Connected":
            return _eval_connected(spec, state, mover)
        if mode == "In":
            last = state.last_move
            if last is None or last.to_site is None:
                return False, None
            targets = {s for r in spec.regions_of(mover) for ss in r.site_sets
                       for s in ss.sites}
            return last.to_site in targets, None
        raise UnsupportedCondition(f"unsupported condition (is {mode} ...)")
    if head == "no":
        # (no Moves Next): the player due to move next has no legal moves.
        return len(legal_moves(spec, state)) == 0, None
    if head == "or":
        for sub in cond.args:
            ok, sites = _eval(spec, state, sub, mover)
            if ok:
                return True, sites
        return False, None
    if head == "and":
        collected: list[int] = []
        for sub in cond.args:
            ok, sites = _eval(spec, state, sub, mover)
            if not ok:
                return False, None
            if sites:
                collected.extend(sites)
        return True, tuple(collected) if collected else None
    raise UnsupportedCondition(f"unsupported condition '{head}'")


def eval_condition(spec: GameSpec, state: GameState, cond, mover: int) -> bool:
    """Evaluate a condition ludeme (node or ludeme id) in ``state``."""
    if isinstance(cond, int):
        cond = spec.node(cond)
    return _eval(spec, state, cond, mover)[0]


def _eval_line(spec: GameSpec, state: GameState,
               length: int) -> tuple[bool, tuple[int, ...] | None]:
    last = state.last_move
    if last is None or last.to_site is None:
        return False, None
    site = last.to_site
    content = state.contents[site]
    if content is None:
        return False, None
    owner = content[1]
    board = spec.board
    for axis in board.line_axes:
        run = [site]
        for sign in (1, -1):
            vec = (axis[0] * sign, axis[1] * sign)
            cur = board.offset(site, vec)
            while cur is not None and state.contents[cur] is not None \
                    and state.contents[cur][1] == owner:
                run.append(cur)
                cur = board.offset(cur, vec)
        if len(run) >= length:
            return True, tuple(sorted(run))
    return False, None


def _eval_connected(spec: GameSpec, state: GameState,
                    mover: int) -> tuple[bool, tuple[int, ...] | None]:
    site_sets = [set(ss.sites) for r in spec.regions_of(mover) for ss in r.site_sets]
    if len(site_sets) < 2:
        return False, None
    occupied = {i for i, c in enumerate(state.contents)
                if c is not None and c[1] == mover}
    seeds = sorted(site_sets[0] & occupied)
    if not seeds:
        return False, None
    # BFS over the mover's pieces from the first region set.
    parent: dict[int, int | None] = {s: None for s in seeds}
    frontier = list(seeds)
    while frontier:
        nxt = []
        for site in frontier:
            for n in spec.board.adjacent[site]:
                if n in occupied and n not in parent:
                    parent[n] = site
                    nxt.append(n)
        frontier = nxt
    reached = set(parent)
    if not all(reached & s for s in site_sets[1:]):
        return False, None
    # Winning sites: a shortest connecting path into the second region set.
    goal = min(reached & site_sets[1])
    path = []
    cur: int | None = goal
    while cur is not None:
        path.append(cur)
        cur = parent[cur]
    return True, tuple(sorted(path))


def check_end(spec: GameSpec, state: GameState, move: Move) -> EndMatch | None:
    """First matching end rule after ``move``, else the draw fallback."""
    for rule in spec.end_rules:
        ok, sites = _eval(spec, state, spec.node(rule.cond_id), move.mover)
        if not ok:
            continue
        if rule.who == "Mover":
            subject = move.mover
        elif rule.who == "Next":
            subject = _next_player(spec, move.mover)
        else:
            subject = int(rule.who[1:])
        if rule.outcome == "Draw":
            players = tuple(range(1, spec.player_count + 1))
        else:
            players = (subject,)
        return EndMatch(rule.end_id, players, rule.outcome, move, sites)
    if not legal_moves(spec, state):
        return EndMatch(None, tuple(range(1, spec.player_count + 1)), "Draw", move, None)
    return None


def random_playout(spec: GameSpec, seed: int, *,
                   move_cap: int = PLAYOUT_MOVE_CAP) -> PlayoutTrace:
    """Uniform random playout; identical seed yields an identical trace."""
    rng = XorShift64Star(seed)
    state = initial_state(spec)
    moves: list[Move] = []
    while state.terminal is None:
        legal = legal_moves(spec, state)
        if not legal:  # degenerate spec with no opening move
            state.terminal = EndMatch(None, tuple(range(1, spec.player_count + 1)),
                                      "Draw", None, None)
            break
        move = legal[rng.randrange(len(legal))]
        state = apply_move(state, move, spec, validate=False)
        moves.append(move)
        if len(moves) > move_cap:
            raise PlayoutLimitExceeded(f"no terminal state after {move_cap} moves")
    return PlayoutTrace(seed, tuple(moves), state.terminal, state)


def replay(spec: GameSpec, trace: PlayoutTrace, upto: int | None = None) -> GameState:
    """State reached by applying the first ``upto`` trace moves (all if None)."""
    state = initial_state(spec)
    moves = trace.moves if upto is None else trace.moves[:upto]
    for move in moves:
        state = apply_move(state, move, spec, validate=False)
    return state


def _action_to_jsonable(action: Action, spec: GameSpec) -> list:
    label = spec.board.sites
    out: list = [action.kind]
    if action.piece is not None:
        out.append(action.piece)
    for site in (action.site, action.from_site, action.to_site):
        if site is not None:
            out.append(label[site].label)
    if action.player is not None:
        out.extend([action.player, action.value])
    return out


def trace_to_dict(trace: PlayoutTrace, spec: GameSpec) -> dict:
    """JSON-friendly form of one playout (debug export)."""
    outcome = trace.outcome
    return {
        "seed": trace.seed,
        "moves": [
            {
                "mover": m.mover,
                "piece": m.piece,
                "origin_ludeme": m.origin_id,
                "from": spec.board.sites[m.from_site].label if m.from_site is not None else None,
                "to": spec.board.sites[m.to_site].label if m.to_site is not None else None,
                "actions": [_action_to_jsonable(a, spec) for a in m.actions],
            }
            for m in trace.moves
        ],
        "outcome": {
            "players": list(outcome.players),
            "result": outcome.outcome,
            "end_ludeme": outcome.end_id,
            "winning_sites": [spec.board.sites[s].label for s in outcome.winning_sites]
            if outcome.winning_sites else None,
        },
    }
