"""
Tile catalogue service.
Builds tiles from their compressed names, resolves canonical names, and
serves the named catalogues of the T1 and T2 contexts.
"""
import json
import logging
import os
from functools import lru_cache
from typing import Dict, Iterable, List, NamedTuple, Optional, Tuple, Union

from config import Config
from models.mark import EdgeMark, format_mark, frame_vars, mark_shift, parse_mark
from models.tile import POSES, SIDES, Tile, TileSet
from utils.errors import (
    ContextError, TileNameError, UnknownCatalogueError, UnnameableTileError
)

logger = logging.getLogger(__name__)

H_ORDER = ('-', '0', '1', '3', '-3')
OUTWARD_FORMS = ('A', 'B')

Vertical = Union[str, Tuple[int, int], int]


class TileSpec(NamedTuple):
    """Components of a tile name."""
    context: str                 # 'T1' or 'T2'
    outward: bool
    form: str                    # outward form 'A'/'B', or horizontal class
    y: Optional[int]             # outward framing d, or horizontal framing y
    vertical: Vertical           # '+', T1 digit, or T2 (z, w)
    cornered: bool = False


# --- names -----------------------------------------------------------------

def _clean(name: str) -> str:
    return name.strip().replace('−', '-')


def parse_tile_name(name: str) -> TileSpec:
    """Parse '<A>', '<B2*>', '[13]', '[-3+]', '[13|00]', '[-|+]'."""
    text = _clean(name)
    if len(text) < 3:
        raise TileNameError("tile name too short", text, 0)
    if text[0] == '<' and text[-1] == '>':
        inner = text[1:-1]
        cornered = inner.endswith('*')
        inner = inner.rstrip('*')
        if not inner or inner[0] not in OUTWARD_FORMS:
            raise TileNameError("unknown outward form", text, 1)
        if len(inner) == 1:
            return TileSpec('T1', True, inner, None, '+', cornered)
        if len(inner) == 2 and inner[1] in '0123':
            return TileSpec('T2', True, inner[0], int(inner[1]), '+', cornered)
        raise TileNameError("bad outward framing digit", text, 2)
    if text[0] != '[' or text[-1] != ']':
        raise TileNameError("expected '[...]' or '<...>'", text, 0)
    inner = text[1:-1]
    if '|' in inner:
        left, right = inner.split('|', 1)
        if left == '-':
            h, y = '-', None
        else:
            h, y_char = left[:-1], left[-1:]
            if h not in H_ORDER[1:] or y_char not in tuple('0123'):
                raise TileNameError("bad horizontal class", text, 1)
            y = int(y_char)
        if right == '+':
            vertical: Vertical = '+'
        elif len(right) == 2 and all(ch in '0123' for ch in right):
            vertical = (int(right[0]), int(right[1]))
        else:
            raise TileNameError("bad vertical marking", text, len(left) + 2)
        return TileSpec('T2', False, h, y, vertical)
    h, v = inner[:-1], inner[-1:]
    if h not in H_ORDER:
        raise TileNameError("bad horizontal class", text, 1)
    if v == '+':
        return TileSpec('T1', False, h, None, '+')
    if v in tuple('0123'):
        return TileSpec('T1', False, h, None, int(v))
    raise TileNameError("bad vertical marking", text, len(text) - 2)


def format_tile_name(spec: TileSpec) -> str:
    if spec.outward:
        digit = '' if spec.y is None else str(spec.y)
        return f"<{spec.form}{digit}{'*' if spec.cornered else ''}>"
    if spec.context == 'T1':
        return f"[{spec.form}{spec.vertical}]"
    left = '-' if spec.form == '-' else f"{spec.form}{spec.y}"
    right = '+' if spec.vertical == '+' else f"{spec.vertical[0]}{spec.vertical[1]}"
    return f"[{left}|{right}]"


def name_sort_key(name: str):
    """Outward tiles first, then crossing tiles by horizontal class, y, vertical."""
    spec = parse_tile_name(name)
    if spec.outward:
        return (0, OUTWARD_FORMS.index(spec.form), -1 if spec.y is None else spec.y, spec.cornered)
    if spec.vertical == '+':
        vertical = (-1, -1)
    elif isinstance(spec.vertical, tuple):
        vertical = spec.vertical
    else:
        vertical = (spec.vertical, -1)
    return (1, H_ORDER.index(spec.form), -1 if spec.y is None else spec.y, vertical)


# --- construction ----------------------------------------------------------

@lru_cache(maxsize=None)
def edge_forms(data_dir: Optional[str] = None) -> dict:
    path = os.path.join(data_dir or Config.DATA_DIR, 'edge_forms.json')
    with open(path, encoding='utf-8') as handle:
        forms = json.load(handle)
    logger.info(f"Loaded edge forms from {path}")
    return forms


def _fill(template: str, context: str, d: Optional[int] = None, z: int = 0, w: Optional[int] = None) -> EdgeMark:
    if context == 'T1':
        text = template.format(d='', b='', q='', p='', z=z, w='')
        return parse_mark(text, 'T1')
    d = 0 if d is None else d
    b, q, p = frame_vars(d)
    text = template.format(d=d, b=b, q=q, p=p, z=z, w=w)
    return parse_mark(text, 'T2')


def build_tile(spec: TileSpec) -> Tile:
    """Construct the tile for a name spec; the name is left for canonicalisation."""
    forms = edge_forms()
    ctx = spec.context
    if spec.outward:
        shape = forms['outward'][spec.form]
        edges = tuple(_fill(shape[side], ctx, spec.y) for side in SIDES)
        return Tile(spec.cornered, edges)
    horizontal = forms['horizontal'][spec.form]
    west = _fill(horizontal['W'], ctx, spec.y)
    east = _fill(horizontal['E'], ctx, spec.y)
    if spec.vertical == '+':
        vertical = forms['vertical']['plain']
        north, south = _fill(vertical['N'], ctx, 0), _fill(vertical['S'], ctx, 0)
    else:
        vertical = forms['vertical']['marked']
        if ctx == 'T1':
            z, w = spec.vertical, None
        else:
            z, w = spec.vertical
        north = _fill(vertical['N'], ctx, 0, z, w)
        south = _fill(vertical['S'], ctx, 0, z, w)
    return Tile(False, (north, east, south, west))


def _candidate_specs() -> List[TileSpec]:
    specs = []
    for form in OUTWARD_FORMS:
        for cornered in (False, True):
            specs.append(TileSpec('T1', True, form, None, '+', cornered))
            for d in range(4):
                specs.append(TileSpec('T2', True, form, d, '+', cornered))
    for h in H_ORDER:
        for v in ('+', 0, 1, 2, 3):
            specs.append(TileSpec('T1', False, h, None, v))
    verticals = ['+'] + [(z, w) for z in range(4) for w in range(4)]
    for vertical in verticals:
        specs.append(TileSpec('T2', False, '-', None, vertical))
        for h in H_ORDER[1:]:
            for y in range(4):
                specs.append(TileSpec('T2', False, h, y, vertical))
    return specs


@lru_cache(maxsize=None)
def _name_index() -> Dict[tuple, str]:
    index: Dict[tuple, str] = {}
    for spec in _candidate_specs():
        name = format_tile_name(spec)
        key = build_tile(spec).key
        current = index.get(key)
        if current is None or name_sort_key(name) < name_sort_key(current):
            index[key] = name
    return index


def canonical_name(tile: Tile) -> str:
    """Lexicographically earliest name among the aliases of a tile."""
    name = _name_index().get(tile.key)
    if name is None:
        edges = ' '.join(format_mark(m) for m in tile.edges)
        raise UnnameableTileError(f"tile ({edges}) belongs to no naming family")
    return name


def named(tile: Tile) -> Tile:
    return Tile(tile.cornered, tile.edges, canonical_name(tile))


@lru_cache(maxsize=None)
def tile_from_name(name: str) -> Tile:
    """Build a tile; its edges follow the canonical alias so poses are stable."""
    alias = named(build_tile(parse_tile_name(name)))
    if alias.name == _clean(name):
        return alias
    return Tile(alias.cornered, build_tile(parse_tile_name(alias.name)).edges, alias.name)


def pose_for(tile: Tile, edges) -> Optional[int]:
    """First pose of tile whose edges equal the given (N, E, S, W)."""
    for pose in POSES:
        if tile.posed(pose) == tuple(edges):
            return pose
    return None


def tile_order_key(tile: Tile):
    """Catalogue order for named tiles; anything else sorts after by its edges."""
    try:
        return (0, name_sort_key(tile.name), ())
    except TileNameError:
        return (1, (), (tile.name, tile.key))


def tiles_from_names(names: Iterable[str]) -> List[Tile]:
    return [tile_from_name(n) for n in names]


def pair_tile_names(y: int, vertical: str) -> Tuple[str, str]:
    """The matched pair [[3y|zw]] = {[3y|zw], [-3(y+2)|zw]}, canonically named."""
    first = tile_from_name(f"[3{y}|{vertical}]").name
    second = tile_from_name(f"[-3{y ^ 2}|{vertical}]").name
    return first, second


# --- maps ------------------------------------------------------------------

def forget_d(tile: Tile) -> Tile:
    """Erase the framing channel: [xy|zw] -> [xz]."""
    if tile.context != 'T2':
        raise ContextError(f"forget_d expects a T2 tile, got {tile.name or tile!r}")
    edges = tuple(EdgeMark(m.a, m.b, m.c, None) for m in tile.edges)
    return named(Tile(tile.cornered, edges))


def tile_shift(tile: Tile, k: int) -> Tile:
    if tile.context != 'T2':
        raise ContextError(f"framing shift needs a T2 tile, got {tile.name or tile!r}")
    return named(Tile(tile.cornered, tuple(mark_shift(m, k) for m in tile.edges)))


def tileset_shift(tiles: TileSet, k: int) -> TileSet:
    return TileSet.of(f"{tiles.name}+{k}" if k else tiles.name, (tile_shift(t, k) for t in tiles))


# --- catalogues ------------------------------------------------------------

T_HV_NAMES = [f"[{h}{v}]" for h in ('-', '1', '3', '-3') for v in ('+', '0', '1', '2', '3')] + ['[0+]', '[02]', '[03]']
K1_NAMES = ['[02]', '[03]', '[10]', '[11]', '[12]', '[13]']
BLOCK_TILE_NAMES = {
    'U': ['[11]', '[-0]', '[0+]', '[1+]'],
    'J': ['[03]', '[10]', '[-1]', '[-2]', '[0+]', '[1+]'],
    'I': ['[02]', '[-3]', '[1+]'],
    'H': ['[12]', '[13]', '[0+]', '[-+]'],
}
RULE_SET_NAMES = {
    'T_Pi': ['[02]', '[11]', '[32]', '[-32]', '[-0]', '[-1]', '[-3]', '[-+]', '[0+]', '[1+]', '[3+]', '[-3+]'],
    'T_par': ['[03]', '[10]', '[30]', '[-30]', '[-0]', '[-1]', '[-2]', '[-3]', '[-+]', '[0+]', '[1+]', '[3+]', '[-3+]'],
    'T_Xi': ['[11]', '[12]', '[13]', '[30]', '[-30]', '[-0]', '[-1]', '[-2]', '[-3]', '[-+]', '[0+]', '[1+]', '[3+]',
             '[-3+]'],
}
K2_PATTERNS = ['[1{y}|00]', '[0{y}|30]', '[0{y}|32]', '[1{y}|02]', '[1{y}|33]', '[1{y}|31]', '[1{y}|23]',
               '[1{y}|21]', '[1{y}|11]', '[1{y}|13]']
U2_PLUS_NAMES = ['[00|+]', '[01|+]', '[10|+]', '[11|+]', '[12|+]', '[13|+]', '[30|+]', '[-30|+]', '[32|+]',
                 '[-32|+]']
ZW = [f"{z}{w}" for z in range(4) for w in range(4)]

CATALOGUE_NAMES = ('T+', 'T_hv', 'T1', 'K1', 'U1', 'T_U', 'T_J', 'T_I', 'T_H', 'T_Pi', 'T_par', 'T_Xi',
                   'T_Pibar', 'T+2', 'K2', 'U2', 'T0', 'T2')

CATALOGUE_ALIASES = {
    'T_Π': 'T_Pi', 'T_∥': 'T_par', 'T_Ξ': 'T_Xi', 'T_Π̄': 'T_Pibar', 'T₁': 'T1', 'T₂': 'T2', 'T₀': 'T0',
}


def _outward_names(context: str) -> List[str]:
    digits = [None] if context == 'T1' else [0, 1, 2, 3]
    return [format_tile_name(TileSpec(context, True, form, d, '+', cornered))
            for form in OUTWARD_FORMS for d in digits for cornered in (False, True)]


def _members(name: str) -> List[str]:
    if name == 'T+':
        return _outward_names('T1')
    if name == 'T_hv':
        return T_HV_NAMES
    if name == 'T1':
        return _outward_names('T1') + T_HV_NAMES
    if name == 'K1':
        return K1_NAMES
    if name == 'U1':
        return [n for n in T_HV_NAMES if n not in K1_NAMES]
    if name.startswith('T_') and name[2:] in BLOCK_TILE_NAMES:
        return BLOCK_TILE_NAMES[name[2:]]
    if name in RULE_SET_NAMES:
        return _outward_names('T1') + RULE_SET_NAMES[name]
    if name == 'T_Pibar':
        return [n for n in _members('T1') if n != '[02]']
    if name == 'T+2':
        return _outward_names('T2')
    if name == 'K2':
        return [p.format(y=y) for p in K2_PATTERNS for y in range(4)]
    if name == 'U2':
        return ([f"[{h}{y}|{zw}]" for h in ('3', '-3') for y in range(4) for zw in ZW]
                + [f"[-|{zw}]" for zw in ZW] + U2_PLUS_NAMES + ['[-|+]'])
    if name == 'T0':
        return ['[-|+]', '[00|+]', '[01|+]'] + [f"[-|{zw}]" for zw in ZW]
    if name == 'T2':
        return _members('T+2') + _members('K2') + _members('U2')
    raise UnknownCatalogueError(f"unknown catalogue {name!r}; expected one of {', '.join(CATALOGUE_NAMES)}")


@lru_cache(maxsize=None)
def catalogue(name: str) -> TileSet:
    """Return one of the eighteen named catalogues."""
    name = CATALOGUE_ALIASES.get(name, name)
    tiles = TileSet.of(name, tiles_from_names(_members(name)))
    logger.info(f"Catalogue {name}: {len(tiles)} tiles")
    return tiles


def tileset_from_names(name: str, names: Iterable[str]) -> TileSet:
    return TileSet.of(name, tiles_from_names(names))


def mutually_excludable(first: TileSet, second: TileSet) -> bool:
    """Neither set contains the other."""
    return bool(first.members - second.members) and bool(second.members - first.members)
