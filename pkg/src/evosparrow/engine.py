"""Sparrow Mahjong (Suzume-Jong) rules engine.

Three seats, 44 tiles: bamboo ranks 1-9 (four copies each, one of which is
the red bonus copy), four green dragons, four red dragons (all red copies).
Each seat holds 5 tiles and draws a 6th on its turn; a hand wins when its
6 tiles split into two melds (a run of three consecutive bamboo ranks or a
triplet of one kind; dragons only form triplets).

A game is deterministic given its deal seed: all randomness is consumed by
the wall shuffle in `new_game`.  States are mutated in place by `apply`,
which returns the `Outcome` once the game ends.

Win/tsumo resolution is automatic: a drawn 6th tile that completes the hand
ends the game immediately, and the discard claim window (`AwaitRonClaims`)
offers claim/pass only to opponents whose hand the discard completes,
nearest in turn order first.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, List, Optional, Tuple, Union

N_SEATS = 3
N_KINDS = 11  # bamboo 1..9, green dragon 10, red dragon 11
GREEN_DRAGON = 10
RED_DRAGON = 11
DEAL_HAND_SIZE = 5
TOTAL_TILES = 44
WALL_AFTER_DEAL = TOTAL_TILES - N_SEATS * DEAL_HAND_SIZE - 1  # 28


class RuleViolation(ValueError):
    """An action that the rules forbid in the current state."""


# ---------------------------------------------------------------------------
# Tiles.  A tile code packs (kind, red flag) into a small int: kind*2 + red.
# Discards are kept as signed kinds (-k for the red copy) since that is the
# form the observation encoding needs.
# ---------------------------------------------------------------------------

def tile_code(kind: int, red: bool = False) -> int:
    return (kind << 1) | int(red)


def tile_kind(code: int) -> int:
    return code >> 1


def tile_is_red(code: int) -> bool:
    return bool(code & 1)


def tile_str(code: int) -> str:
    k = code >> 1
    return f"r{k}" if code & 1 else str(k)


def full_census() -> List[int]:
    """The 44-tile census as a list of tile codes."""
    tiles = []
    for k in range(1, 10):
        tiles.extend([tile_code(k)] * 3)
        tiles.append(tile_code(k, red=True))
    tiles.extend([tile_code(GREEN_DRAGON)] * 4)
    tiles.extend([tile_code(RED_DRAGON, red=True)] * 4)
    return tiles


# ---------------------------------------------------------------------------
# Win detection.  Hands are tracked as per-kind counts packed into an int key
# (3 bits per kind), so membership in the precomputed winning-key set makes
# both tsumo and ron checks O(1) in the play loop.
# ---------------------------------------------------------------------------

_KIND_BIT = [0] + [1 << (3 * (k - 1)) for k in range(1, N_KINDS + 1)]


def _pack_counts(counts: List[int]) -> int:
    key = 0
    for k in range(1, N_KINDS + 1):
        key += counts[k] * _KIND_BIT[k]
    return key


def _melds_cover(counts: List[int], start: int, need: int) -> bool:
    # The lowest occupied kind must start a meld (runs extend upward only),
    # so trying a triplet and a run there is an exhaustive search.
    k = start
    while k <= N_KINDS and counts[k] == 0:
        k += 1
    if k > N_KINDS:
        return need == 0
    if need == 0:
        return False
    if counts[k] >= 3:
        counts[k] -= 3
        ok = _melds_cover(counts, k, need - 1)
        counts[k] += 3
        if ok:
            return True
    if k <= 7 and counts[k + 1] > 0 and counts[k + 2] > 0:
        counts[k] -= 1
        counts[k + 1] -= 1
        counts[k + 2] -= 1
        ok = _melds_cover(counts, k, need - 1)
        counts[k] += 1
        counts[k + 1] += 1
        counts[k + 2] += 1
        if ok:
            return True
    return False


def _all_hand_counts() -> Iterable[List[int]]:
    counts = [0] * (N_KINDS + 1)

    def rec(kind: int, left: int):
        if kind > N_KINDS:
            if left == 0:
                yield list(counts)
            return
        for c in range(min(left, 4) + 1):
            counts[kind] = c
            yield from rec(kind + 1, left - c)
        counts[kind] = 0

    yield from rec(1, 6)


def _build_winning_keys() -> frozenset:
    keys = set()
    for counts in _all_hand_counts():
        if _melds_cover(counts, 1, 2):
            keys.add(_pack_counts(counts))
    return frozenset(keys)


WINNING_KEYS = _build_winning_keys()


def is_winning_hand(kinds: Iterable[int]) -> bool:
    """True iff the six tile kinds partition into two melds."""
    kinds = list(kinds)
    if len(kinds) != 6:
        raise ValueError(f"a hand has exactly 6 tiles, got {len(kinds)}")
    counts = [0] * (N_KINDS + 1)
    for k in kinds:
        if not 1 <= k <= N_KINDS:
            raise ValueError(f"tile kind out of range: {k}")
        counts[k] += 1
    return _melds_cover(counts, 1, 2)


def score_hand(kinds: Iterable[int], dora_kinds: Iterable[int], red_count: int) -> int:
    """Points for a winning hand: 1 base + 1 per red copy + 1 per tile of a
    dora kind (a red copy of a dora kind counts for both)."""
    kinds = list(kinds)
    if not is_winning_hand(kinds):
        raise ValueError("cannot score a non-winning hand")
    dora = set(dora_kinds)
    return 1 + red_count + sum(1 for k in kinds if k in dora)


# ---------------------------------------------------------------------------
# Game state machine.
# ---------------------------------------------------------------------------

class Phase(Enum):
    AWAIT_DISCARD = "await_discard"
    AWAIT_RON = "await_ron_claims"
    TERMINAL = "terminal"


class RonAction(Enum):
    CLAIM = "claim_ron"
    PASS = "pass"


# A discard action is the plain tile kind (int); claim-window actions are
# RonAction members.
Action = Union[int, RonAction]


class OutcomeKind(Enum):
    WIN_TSUMO = "win_tsumo"
    WIN_RON = "win_ron"
    DRAW = "draw"


@dataclass(frozen=True)
class Outcome:
    kind: OutcomeKind
    winner: Optional[int]
    dealer_in: Optional[int]
    score_deltas: Tuple[int, int, int]
    points: int = 0


class GameState:
    """Mutable state of one game.

    `plain` / `red` hold per-seat per-kind copy counts, `keys` the packed
    count keys used for win lookups.  Discards are signed kinds in
    chronological order.  `outcome` is set once `phase` is TERMINAL.
    """

    __slots__ = (
        "wall", "cursor", "plain", "red", "keys", "discards", "indicator",
        "current_seat", "phase", "outcome",
        "ron_queue", "ron_discarder", "ron_tile", "trace",
    )

    def __init__(self):
        self.wall: List[int] = []
        self.cursor = 0
        self.plain = [[0] * (N_KINDS + 1) for _ in range(N_SEATS)]
        self.red = [[0] * (N_KINDS + 1) for _ in range(N_SEATS)]
        self.keys = [0, 0, 0]
        self.discards: List[List[int]] = [[], [], []]
        self.indicator = 0
        self.current_seat = 0
        self.phase = Phase.AWAIT_DISCARD
        self.outcome: Optional[Outcome] = None
        self.ron_queue: List[int] = []
        self.ron_discarder = -1
        self.ron_tile = 0
        self.trace: Optional[List[str]] = None

    # -- queries ----------------------------------------------------------

    @property
    def wall_remaining(self) -> int:
        return TOTAL_TILES - self.cursor

    @property
    def dora_kind(self) -> int:
        return tile_kind(self.indicator)

    def hand_size(self, seat: int) -> int:
        return sum(self.plain[seat]) + sum(self.red[seat])

    def hand_codes(self, seat: int) -> List[int]:
        """The seat's tiles as codes, red copy first within a kind."""
        out = []
        for k in range(1, N_KINDS + 1):
            out.extend([tile_code(k, red=True)] * self.red[seat][k])
            out.extend([tile_code(k)] * self.plain[seat][k])
        return out

    def hand_kinds(self, seat: int) -> List[int]:
        out = []
        for k in range(1, N_KINDS + 1):
            out.extend([k] * (self.plain[seat][k] + self.red[seat][k]))
        return out

    def census_codes(self) -> List[int]:
        """Every tile the state accounts for; equals the full census always."""
        tiles = list(self.wall[self.cursor:])
        tiles.append(self.indicator)
        for seat in range(N_SEATS):
            tiles.extend(self.hand_codes(seat))
            tiles.extend(
                tile_code(abs(s), red=s < 0) for s in self.discards[seat]
            )
        return tiles

    # -- internals --------------------------------------------------------

    def _log(self, seat: int, event: str, tile: str):
        if self.trace is not None:
            self.trace.append(f"{seat}|{event}|{tile}|{self.wall_remaining}")

    def _hand_points(self, seat: int, extra_code: Optional[int] = None) -> int:
        kinds = self.hand_kinds(seat)
        reds = sum(self.red[seat])
        if extra_code is not None:
            kinds.append(tile_kind(extra_code))
            reds += int(tile_is_red(extra_code))
        dora = self.dora_kind
        return 1 + reds + sum(1 for k in kinds if k == dora)

    def _finish(self, outcome: Outcome):
        self.phase = Phase.TERMINAL
        self.outcome = outcome
        self.ron_queue = []

    def _finish_tsumo(self, seat: int) -> Outcome:
        points = self._hand_points(seat)
        pay = (points + 1) // 2  # each opponent pays half, rounded up
        deltas = [-pay] * N_SEATS
        deltas[seat] = 2 * pay
        out = Outcome(OutcomeKind.WIN_TSUMO, seat, None, tuple(deltas), points)
        self._log(seat, "tsumo", str(points))
        self._finish(out)
        return out

    def _finish_ron(self, claimant: int) -> Outcome:
        code = tile_code(abs(self.ron_tile), red=self.ron_tile < 0)
        points = self._hand_points(claimant, extra_code=code)
        deltas = [0] * N_SEATS
        deltas[claimant] = points
        deltas[self.ron_discarder] = -points
        out = Outcome(
            OutcomeKind.WIN_RON, claimant, self.ron_discarder, tuple(deltas), points
        )
        self._log(claimant, "ron", tile_str(code))
        self._finish(out)
        return out

    def _draw(self, seat: int):
        code = self.wall[self.cursor]
        self.cursor += 1
        k = tile_kind(code)
        if tile_is_red(code):
            self.red[seat][k] += 1
        else:
            self.plain[seat][k] += 1
        self.keys[seat] += _KIND_BIT[k]
        self._log(seat, "draw", tile_str(code))
        if self.keys[seat] in WINNING_KEYS:
            return self._finish_tsumo(seat)
        self.current_seat = seat
        self.phase = Phase.AWAIT_DISCARD
        return None

    def _advance(self, after_seat: int):
        if self.cursor == TOTAL_TILES:
            out = Outcome(OutcomeKind.DRAW, None, None, (0, 0, 0))
            self._log(after_seat, "exhausted", "-")
            self._finish(out)
            return out
        return self._draw((after_seat + 1) % N_SEATS)


def new_game(seed: int, trace: bool = False) -> GameState:
    """Deal a fresh game: shuffle the wall from `seed`, deal 5 tiles per
    seat, reveal the dora indicator, and give seat 0 its first draw.

    In the rare case that the first draw already completes seat 0's hand
    the returned state is terminal with a tsumo outcome.
    """
    rng = random.Random(seed)
    state = GameState()
    if trace:
        state.trace = []
    state.wall = full_census()
    rng.shuffle(state.wall)
    for seat in range(N_SEATS):
        for code in state.wall[seat * 5:(seat + 1) * 5]:
            k = tile_kind(code)
            if tile_is_red(code):
                state.red[seat][k] += 1
            else:
                state.plain[seat][k] += 1
            state.keys[seat] += _KIND_BIT[k]
    state.indicator = state.wall[15]
    state.cursor = 16
    state._log(-1, "indicator", tile_str(state.indicator))
    state._draw(0)
    return state


def legal_actions(state: GameState) -> List[Action]:
    """Legal actions for the acting seat: the distinct kinds in the 6-tile
    hand when discarding, or claim/pass during a ron window."""
    if state.phase is Phase.TERMINAL:
        raise RuleViolation("no legal actions in a terminal state")
    if state.phase is Phase.AWAIT_RON:
        return [RonAction.CLAIM, RonAction.PASS]
    seat = state.current_seat
    plain, red = state.plain[seat], state.red[seat]
    return [k for k in range(1, N_KINDS + 1) if plain[k] or red[k]]


def acting_seat(state: GameState) -> int:
    """Whose action `apply` expects next."""
    if state.phase is Phase.TERMINAL:
        raise RuleViolation("no acting seat in a terminal state")
    if state.phase is Phase.AWAIT_RON:
        return state.ron_queue[0]
    return state.current_seat


def apply(state: GameState, seat: int, action: Action) -> Union[GameState, Outcome]:
    """Apply one action, mutating `state`; returns the `Outcome` when the
    action (or the automatic draw it triggers) ends the game, else `state`.
    """
    if state.phase is Phase.TERMINAL:
        raise RuleViolation("the game is over")

    if state.phase is Phase.AWAIT_RON:
        claimant = state.ron_queue[0]
        if seat != claimant:
            raise RuleViolation(
                f"seat {seat} has no claim pending; seat {claimant} does"
            )
        if action is RonAction.CLAIM:
            return state._finish_ron(claimant)
        if action is RonAction.PASS:
            state.ron_queue.pop(0)
            if state.ron_queue:
                return state
            return state._advance(state.ron_discarder)
        raise RuleViolation(f"expected a ron claim or pass, got {action!r}")

    if seat != state.current_seat:
        raise RuleViolation(
            f"seat {seat} cannot discard; it is seat {state.current_seat}'s turn"
        )
    if not isinstance(action, int) or isinstance(action, bool):
        raise RuleViolation(f"expected a tile kind to discard, got {action!r}")
    kind = action
    plain, red = state.plain[seat], state.red[seat]
    if not 1 <= kind <= N_KINDS or (plain[kind] == 0 and red[kind] == 0):
        raise RuleViolation(f"seat {seat} holds no tile of kind {kind}")

    # The plain copy leaves the hand first; the red copy only when it is the
    # last of its kind.
    if plain[kind]:
        plain[kind] -= 1
        signed = kind
    else:
        red[kind] -= 1
        signed = -kind
    state.keys[seat] -= _KIND_BIT[kind]
    state.discards[seat].append(signed)
    state._log(seat, "discard", tile_str(tile_code(kind, red=signed < 0)))

    bit = _KIND_BIT[kind]
    claimants = [
        s for s in ((seat + 1) % N_SEATS, (seat + 2) % N_SEATS)
        if state.keys[s] + bit in WINNING_KEYS
    ]
    if claimants:
        state.phase = Phase.AWAIT_RON
        state.ron_queue = claimants
        state.ron_discarder = seat
        state.ron_tile = signed
        return state
    return state._advance(seat)
