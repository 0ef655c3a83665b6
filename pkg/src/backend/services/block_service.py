"""
Block calculus service.
Symbolic substitution on marked blocks X(x), closure of the tile tally to a
fixed point, block admissibility, and the T2 derivation of the atomic and
interface tile tables from the block frames, the Π̄ productions and the
canonical framing of the children.
"""
import json
import logging
import os
import re
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Set, Tuple

from config import Config
from models.block import (
    BLOCK_TYPES, FRAME_POSITIONS, ROLE_TYPES, SLOT_ROLES, BlockState, MarkingFrame, Production
)
from models.mark import EdgeMark, nim_add
from models.symbol import SLOTS, Symbol, format_symbol
from models.tile import TileSet
from services.catalogue_service import catalogue, pair_tile_names, tile_from_name, tileset_from_names
from utils.errors import NotDeterministicError, RuleMismatchError, TranscriptionError

logger = logging.getLogger(__name__)

RULE_FAMILIES = {
    'pi': ('pi',),
    'par': ('par',),
    'xi': ('xi',),
    'pibar': ('pibar02', 'pibar13'),
}
RULE_LABELS = {'pi': 'Π', 'par': '∥', 'xi': 'Ξ', 'pibar': 'Π̄'}
RULE_ALIASES = {'Π': 'pi', '∥': 'par', 'Ξ': 'xi', 'Π̄': 'pibar'}

_CHILD = re.compile(r'^([UJIH])\((-?[x+0-3])\)$')


# --- productions -----------------------------------------------------------

@lru_cache(maxsize=None)
def _production_data(data_dir: Optional[str] = None) -> dict:
    path = os.path.join(data_dir or Config.DATA_DIR, 't1_productions.json')
    with open(path, encoding='utf-8') as handle:
        data = json.load(handle)
    logger.info(f"Loaded block productions from {path}")
    return data


def frame_assignment(btype: str) -> MarkingFrame:
    """The marking classes at positions i..ix of a block."""
    frames = _production_data()['frames']
    if btype not in frames:
        raise RuleMismatchError(f"unknown block type {btype!r}; expected one of {', '.join(BLOCK_TYPES)}")
    row = frames[btype]
    return MarkingFrame(btype, tuple((position, row[position]) for position in FRAME_POSITIONS))


@lru_cache(maxsize=None)
def load_productions() -> Dict[str, Tuple[Production, ...]]:
    productions = {}
    for rule, entries in _production_data()['rules'].items():
        productions[rule] = tuple(
            Production(rule, e['lhs'], tuple(e['children']), tuple(e['tally']), e.get('when'))
            for e in entries
        )
        for production in productions[rule]:
            if len(production.children) not in (2, 3, 4):
                raise TranscriptionError(f"{rule} production for {production.lhs} has "
                                         f"{len(production.children)} children", f"{rule}:{production.lhs}")
    return productions


def resolve_rules(rules: Iterable[str]) -> List[str]:
    """Expand rule families ('pibar') and symbol aliases into production rule names."""
    names: List[str] = []
    known = load_productions()
    for rule in rules:
        rule = RULE_ALIASES.get(rule.strip(), rule.strip())
        expanded = RULE_FAMILIES.get(rule, (rule,))
        for name in expanded:
            if name not in known:
                raise RuleMismatchError(f"unknown rule {rule!r}; expected one of {', '.join(RULE_FAMILIES)}")
            if name not in names:
                names.append(name)
    return names


# --- mark classes ----------------------------------------------------------

def negate(x: str) -> str:
    return x[1:] if x.startswith('-') else f"-{x}"


def _child_state(text: str, parent: BlockState) -> BlockState:
    match = _CHILD.match(text)
    if not match:
        raise TranscriptionError(f"unreadable child {text!r}", text)
    btype, argument = match.groups()
    if argument == 'x':
        return BlockState(btype, parent.x)
    if argument == '-x':
        return BlockState(btype, negate(parent.x))
    return BlockState(btype, argument)


def _resolve_tile(template: str, x: str) -> Optional[str]:
    """[h x] with the class substituted; None while x is still symbolic."""
    if not template.endswith('x]'):
        return template
    if x in ('x', '-x'):
        return None
    h = template[1:-2]
    if not x.startswith('-'):
        return f"[{h}{x}]"
    flipped = {'3': '-3', '-3': '3', '-': '-'}
    if h not in flipped:
        raise RuleMismatchError(f"tile {template} has no reading for the inward class {x}")
    return f"[{flipped[h]}{x[1:]}]"


def _apply(production: Production, state: BlockState) -> Tuple[List[BlockState], Set[str]]:
    children = [_child_state(child, state) for child in production.children]
    tally = set()
    for template in production.tally:
        name = _resolve_tile(template, state.x)
        tally.add(name if name is not None else template)
    return children, tally


def block_substitute(rule: str, state: BlockState) -> Tuple[List[BlockState], Set[str]]:
    """
    Apply one rule to a block X(x).

    Returns:
        (children, tally); tally names still containing 'x' belong to a
        symbolic parent
    """
    children: List[BlockState] = []
    tally: Set[str] = set()
    matched = False
    for name in resolve_rules([rule]):
        for production in load_productions()[name]:
            if production.lhs != state.btype:
                continue
            matched = True
            produced, tiles = _apply(production, state)
            children.extend(c for c in produced if c not in children)
            tally |= tiles
    if not matched:
        raise RuleMismatchError(f"rule {rule} does not apply to block {state.btype}")
    return children, tally


def closure(rules: Iterable[str], seeds: Optional[Iterable[BlockState]] = None) -> TileSet:
    """Least fixed point of the tile tally, united with the outward tiles."""
    names = resolve_rules(rules)
    productions = [p for name in names for p in load_productions()[name]]
    if seeds is None:
        seeds = {BlockState(p.lhs) for p in productions}
    queue = list(seeds)
    seen: Set[BlockState] = set()
    tally: Set[str] = set()
    while queue:
        state = queue.pop()
        if state in seen:
            continue
        seen.add(state)
        for production in productions:
            if production.lhs != state.btype:
                continue
            children, tiles = _apply(production, state)
            tally |= {t for t in tiles if 'x' not in t}
            queue.extend(c for c in children if not c.generic and c not in seen)
    label = '+'.join(names)
    result = catalogue('T+').union(tileset_from_names(f"closure({label})", tally), name=f"closure({label})")
    logger.info(f"Closure of {label}: {len(seen)} states, {len(result)} tiles")
    return result


def block_admissibility(tiles: TileSet) -> Set[str]:
    """Block types whose defining tiles all lie in the set."""
    return {btype for btype in BLOCK_TYPES if catalogue(f"T_{btype}").issubset(tiles)}


def enforced_rules(tiles: TileSet) -> Set[str]:
    """Rule families whose closure lies inside the set."""
    return {family for family in RULE_FAMILIES if closure([family]).issubset(tiles)}


# --- T2 context ------------------------------------------------------------

def y_of(mark: EdgeMark) -> int:
    """Framing code of the pair [[3y|..]] read off a vertical mark's (a, b) class."""
    if mark.a == 1:
        return 1 if mark.b == 1 else 0
    return 3 if mark.b == -1 else 2


def _swap(slot: str) -> str:
    return {'s': 't', 't': 's'}.get(slot, slot)


def _flip(entry):
    if entry == '+':
        return entry
    kind, zw = entry
    return ('b' if kind == 'd' else 'd', zw)


@lru_cache(maxsize=None)
def _framing(data_dir: Optional[str] = None) -> dict:
    path = os.path.join(data_dir or Config.DATA_DIR, 't2_framing.json')
    with open(path, encoding='utf-8') as handle:
        data = json.load(handle)
    logger.info(f"Loaded T2 framing from {path}")
    return data


def _slot_type(slot: str) -> str:
    return ROLE_TYPES[SLOT_ROLES[slot]]


def _check_end(slot: str, w: int, where: str) -> int:
    # J blocks sit in a corner (0 or 2); H and U span the ends 1 and 3
    allowed = (0, 2) if _slot_type(slot) == 'J' else (1, 3)
    if w not in allowed:
        raise TranscriptionError(f"{_slot_type(slot)} block framed with end code {w}", where)
    return w


def crossing_names(slot: str, d: int) -> Set[str]:
    """The six crossing tiles along the frame of the child in a slot, framing code d."""
    framing = _framing()
    slot_framing = framing['slots'][slot]
    frame = frame_assignment(_slot_type(slot))
    names = set()
    for h, y, position in framing['crossings']:
        y = nim_add(nim_add(y, slot_framing['offset']), d)
        marking = frame[position]
        if marking == '+':
            vertical = '+'
        else:
            if position not in slot_framing['ends']:
                raise TranscriptionError(f"no end code for marked position {position}", slot)
            w = _check_end(slot, slot_framing['ends'][position], f"{slot}:{position}")
            vertical = f"{marking}{w}"
        names.add(tile_from_name(f"[{h}{y}|{vertical}]").name)
    return names


def atomic_names(slot: str, d: int) -> Set[str]:
    """Crossing tiles the child in a slot with framing d adds to the base set."""
    base = catalogue('T0')
    return {name for name in crossing_names(slot, d) if tile_from_name(name) not in base}


def _child_marks(production: Production) -> Dict[str, str]:
    """Children of a T1 production placed in the slots of their block type."""
    marks: Dict[str, str] = {}
    for btype in ('J', 'H', 'U'):
        slots = [slot for slot in SLOTS if _slot_type(slot) == btype]
        found = [_CHILD.match(child).group(2) for child in production.children if child.startswith(btype)]
        if len(found) == 1:
            found = found * len(slots)
        if len(found) != len(slots):
            raise TranscriptionError(f"{len(found)} {btype} children for {len(slots)} slots", production.lhs)
        marks.update(zip(slots, found))
    return marks


def _production_for(btype: str, corner: int) -> Production:
    for production in load_productions()['pibar02'] + load_productions()['pibar13']:
        if production.lhs != btype:
            continue
        if production.when is None or str(corner) in production.when:
            return production
    raise RuleMismatchError(f"no production for {btype} in corner {corner}")


def _unreflected_row(slot: str, g: int) -> Dict[str, object]:
    framing = _framing()
    slot_framing = framing['slots'][slot]
    corner = nim_add(g, slot_framing['offset'])
    row: Dict[str, object] = {}
    for child, mark in _child_marks(_production_for(_slot_type(slot), corner)).items():
        if mark == '+':
            row[child] = '+'
            continue
        w = slot_framing['meets'][child]
        if slot_framing['alternates'] and g & 1:
            w = nim_add(w, 2)
        row[child] = (framing['kinds'][child], f"{mark}{_check_end(slot, w, f'{slot}{g}->{child}')}")
    return row


@lru_cache(maxsize=None)
def interface_table() -> Dict[Tuple[str, int], Dict[str, object]]:
    """
    Interface entries by parent (slot, code), columns s t u v.

    A parent with code 2 or 3 places the children of its Π̄ production
    directly; codes 0 and 1 reflect that row, exchanging the two J slots
    and the reading of y.
    """
    table: Dict[Tuple[str, int], Dict[str, object]] = {}
    for slot in SLOTS:
        for g in (2, 3):
            row = _unreflected_row(slot, g)
            table[(slot, g)] = row
            table[(slot, nim_add(g, 2))] = {_swap(column): _flip(entry) for column, entry in row.items()}
    return table


_BASE_CLASS = {'d': (1, -1), 'b': (1, 1), '+': (1, 0)}


def _oriented_y(kind: str, d: int) -> int:
    a, b = _BASE_CLASS[kind]
    if d & 1:
        b = -b
    if d & 2:
        a, b = -a, -b
    return y_of(EdgeMark(a, b, 0, 0))


def interface_names(parent: Tuple[str, int], child: Tuple[str, int]) -> Set[str]:
    """Matched pair placed where a child (slot, d) meets its parent (slot, g)."""
    entry = interface_table()[parent][child[0]]
    kind, zw = ('+', '+') if entry == '+' else entry
    return set(pair_tile_names(_oriented_y(kind, child[1]), zw))


def _atomic_symbol(slot: str, d: int) -> Symbol:
    fields = [frozenset()] * 4
    fields[SLOTS.index(slot)] = frozenset({d})
    return Symbol(*fields)


def t2_block_substitute(symbol: Symbol, state: BlockState) -> Tuple[List[BlockState], Set[str]]:
    """
    Substitute a block in the T2 context under a deterministic symbol.

    Returns:
        (children, tally) with the children carrying slot and framing code;
        the tally holds the children's crossing tiles and, below a slotted
        parent, the interface pairs
    """
    if not symbol.is_deterministic:
        raise NotDeterministicError(f"{format_symbol(symbol)} is not deterministic")
    codes = dict(zip(SLOTS, symbol.codes()))
    children = [BlockState(ROLE_TYPES[SLOT_ROLES[slot]], 'x', slot, codes[slot]) for slot in SLOTS]
    tally: Set[str] = set()
    for child in children:
        tally |= crossing_names(child.slot, child.orient)
        if state.slot is not None:
            tally |= interface_names((state.slot, state.orient), (child.slot, child.orient))
    return children, tally


def t2_closure(symbol: Symbol, level: int) -> Set[str]:
    """Tile names tallied by the level-n marked supertile of a deterministic symbol."""
    tally = set(catalogue('T+2').names()) | set(catalogue('T0').names())
    frontier = {BlockState('H', 'x', None, None)}
    for _ in range(level):
        next_frontier = set()
        for state in frontier:
            children, tiles = t2_block_substitute(symbol, state)
            tally |= tiles
            next_frontier.update(children)
        frontier = next_frontier
    return tally


@lru_cache(maxsize=None)
def derive_atomics() -> Tuple[Dict[Symbol, TileSet], Dict[Tuple[Symbol, Symbol], TileSet]]:
    """
    Derive every atomic and interface tile set from the productions.

    Returns:
        (atomic, pairs): atomic maps each of the 16 atomic symbols to its
        tiles, pairs maps each ordered (parent, child) of atomics to its pair
    """
    atomic = {}
    for slot in SLOTS:
        for d in range(4):
            alpha = _atomic_symbol(slot, d)
            atomic[alpha] = tileset_from_names(f"T_{format_symbol(alpha)}", atomic_names(slot, d))
    pairs = {}
    for parent_slot in SLOTS:
        for g in range(4):
            beta = _atomic_symbol(parent_slot, g)
            for child_slot in SLOTS:
                for d in range(4):
                    alpha = _atomic_symbol(child_slot, d)
                    names = interface_names((parent_slot, g), (child_slot, d))
                    pairs[(beta, alpha)] = tileset_from_names(
                        f"T_{format_symbol(beta)}->{format_symbol(alpha)}", names)
    logger.info(f"Derived {len(atomic)} atomic and {len(pairs)} interface tile sets")
    return atomic, pairs
