"""
Tile-set synthesis service.
Assembles T_S from the outward tiles, T0 and the atomic and interface tables,
builds the named rows of the T1 classification, solves for marked
supertiles, and checks the shift law and tile usage.
"""
import json
import logging
import os
from functools import lru_cache
from typing import Dict, List, NamedTuple, Optional, Set, Tuple, Union

from config import Config
from models.block import BlockState
from models.mark import frame_vars
from models.patch import Boundary, MarkedPatch, Region, SolveMode, SolveStatus
from models.symbol import SLOTS, Symbol, format_symbol, parse_symbol
from models.tile import Tile, TileSet
from services.block_service import (
    RULE_ALIASES, RULE_FAMILIES, RULE_LABELS, block_admissibility, block_substitute, closure, derive_atomics,
    enforced_rules, load_productions, resolve_rules, t2_closure
)
from services.catalogue_service import (
    catalogue, pair_tile_names, tile_from_name, tile_order_key, tileset_from_names, tileset_shift
)
from services.symbol_service import atoms, partner
from utils.errors import (
    LevelLimitError, NotDeterministicError, NotFullSymbolError, RuleMismatchError, TilingError, TranscriptionError
)

logger = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def _fixture(filename: str, data_dir: Optional[str] = None) -> dict:
    path = os.path.join(data_dir or Config.DATA_DIR, filename)
    with open(path, encoding='utf-8') as handle:
        data = json.load(handle)
    logger.info(f"Loaded {filename} from {path}")
    return data


def _atomic(slot: str, d: int) -> Symbol:
    fields = [frozenset()] * 4
    fields[SLOTS.index(slot)] = frozenset({d})
    return Symbol(*fields)


def _fill(template: str, d: int) -> str:
    b, q, p = frame_vars(d)
    return template.format(d=d, b=b, q=q, p=p)


def _pair_entry(template: str, d: int) -> Set[str]:
    if template == '+':
        return set(pair_tile_names(d, '+'))
    name = _fill(template, d)
    return set(pair_tile_names(int(name[2]), name[4:-1]))


@lru_cache(maxsize=None)
def atomic_table() -> Dict[Symbol, TileSet]:
    """The transcribed atomic table, instantiated and checked against the derivation."""
    derived, _ = derive_atomics()
    table = {}
    for slot, templates in _fixture('atomic_table.json')['atomic'].items():
        for d in range(4):
            alpha = _atomic(slot, d)
            tiles = tileset_from_names(f"T_{format_symbol(alpha)}", (_fill(t, d) for t in templates))
            if tiles.members != derived[alpha].members:
                raise TranscriptionError(
                    f"atomic table gives {tiles.names()}, derivation gives {derived[alpha].names()}",
                    format_symbol(alpha))
            table[alpha] = tiles
    logger.info(f"Atomic table agrees with the derivation on {len(table)} entries")
    return table


@lru_cache(maxsize=None)
def pair_table() -> Dict[Tuple[Symbol, Symbol], TileSet]:
    """The transcribed interface table, instantiated and checked against the derivation."""
    _, derived = derive_atomics()
    table = {}
    for row, columns in _fixture('pair_table.json')['pairs'].items():
        beta = _atomic(row[0], int(row[1]))
        for slot, template in columns.items():
            for d in range(4):
                alpha = _atomic(slot, d)
                tiles = tileset_from_names(f"T_{format_symbol(beta)}->{format_symbol(alpha)}",
                                           _pair_entry(template, d))
                if tiles.members != derived[(beta, alpha)].members:
                    raise TranscriptionError(
                        f"pair table gives {tiles.names()}, derivation gives {derived[(beta, alpha)].names()}",
                        f"{format_symbol(beta)}->{format_symbol(alpha)}")
                table[(beta, alpha)] = tiles
    logger.info(f"Pair table agrees with the derivation on {len(table)} entries")
    return table


def _require_atomic(symbol: Symbol) -> Symbol:
    if not symbol.is_atomic:
        raise TilingError(f"{format_symbol(symbol)} is not atomic")
    return symbol


def atomic_tiles(alpha: Symbol) -> TileSet:
    return atomic_table()[_require_atomic(alpha)]


def pair_tiles(beta: Symbol, alpha: Symbol) -> TileSet:
    return pair_table()[(_require_atomic(beta), _require_atomic(alpha))]


def base_tiles() -> TileSet:
    return catalogue('T+2').union(catalogue('T0'), name='T+2|T0')


@lru_cache(maxsize=None)
def synthesize(symbol: Symbol) -> TileSet:
    """
    T_S: outward tiles, T0, the atomic sets of S and the interface pairs of
    every ordered pair of its atoms.
    """
    if not symbol.is_full:
        raise NotFullSymbolError(f"{format_symbol(symbol)} is not full")
    parts = atoms(symbol)
    tiles = [atomic_tiles(alpha) for alpha in parts]
    tiles += [pair_tiles(beta, alpha) for beta in parts for alpha in parts]
    result = base_tiles().union(*tiles, name=f"T_{format_symbol(symbol)}")
    logger.info(f"Synthesized {result.name}: {len(result)} tiles")
    return result


def shift_law_check(symbol: Symbol) -> bool:
    """T of the partner symbol equals T_S shifted by two."""
    return synthesize(partner(symbol)).members == tileset_shift(synthesize(symbol), 2).members


# --- T1 classification -----------------------------------------------------

class Theorem1Row(NamedTuple):
    name: str
    tiles: TileSet
    rules: Tuple[str, ...]
    blocks: Tuple[str, ...]

    def to_dict(self):
        return {
            'name': self.name,
            'size': len(self.tiles),
            'rules': [RULE_LABELS[r] for r in self.rules],
            'rule_keys': list(self.rules),
            'blocks': list(self.blocks),
        }


# (row name, catalogues united, admitted blocks)
THEOREM1_ROWS = (
    ('T_Pi', ('T_Pi',), 'IU'),
    ('T_par', ('T_par',), 'J'),
    ('T_Xi', ('T_Xi',), 'HU'),
    ('T_Pibar', ('T_Pibar',), 'HJU'),
    ('T_Pi+T_par', ('T_Pi', 'T_par'), 'IJU'),
    ('T_Pi+T_Xi', ('T_Pi', 'T_Xi'), 'HIU'),
    ('T_par+T_Xi', ('T_par', 'T_Xi'), 'HJU'),
    ('T_Pi+T_par+T_Xi', ('T_Pi', 'T_par', 'T_Xi'), 'HIJU'),
    ('T1', ('T1',), 'HIJU'),
)


@lru_cache(maxsize=None)
def theorem1_sets() -> List[Theorem1Row]:
    rows = []
    for name, parts, expected_blocks in THEOREM1_ROWS:
        first, *rest = [catalogue(part) for part in parts]
        tiles = first.union(*rest, name=name)
        blocks = tuple(sorted(block_admissibility(tiles)))
        if blocks != tuple(expected_blocks):
            raise TranscriptionError(f"{name} admits {blocks}, expected {tuple(expected_blocks)}", name)
        rules = tuple(r for r in RULE_FAMILIES if r in enforced_rules(tiles))
        rows.append(Theorem1Row(name, tiles, rules, blocks))
    return rows


def theorem1_row(name: str) -> Theorem1Row:
    for row in theorem1_sets():
        if row.name == name:
            return row
    raise TilingError(f"unknown row {name!r}; expected one of {', '.join(r[0] for r in THEOREM1_ROWS)}")


# --- usage -----------------------------------------------------------------

def usage_check(symbol: Symbol, level: int) -> Set[str]:
    """Tiles of T_S that no marked supertile of the given level uses."""
    if not symbol.is_deterministic:
        raise NotDeterministicError(f"{format_symbol(symbol)} is not deterministic")
    if level < 0:
        raise LevelLimitError("level must be non-negative")
    used = t2_closure(symbol, level)
    return {name for name in synthesize(symbol).names() if name not in used}


# --- marked supertiles -----------------------------------------------------

Context = Union[str, Symbol]


def _rule_key_tile(rule: str) -> Tuple[str, Tile]:
    """Block type the rule substitutes first and the key tile its substitution places."""
    name = resolve_rules([rule])[0]
    btype = load_productions()[name][0].lhs
    _, tally = block_substitute(rule, BlockState(btype, '+'))
    keys = catalogue(f"T_{btype}")
    placed = sorted((tile_from_name(t) for t in tally if tile_from_name(t) in keys), key=tile_order_key)
    if not placed:
        raise RuleMismatchError(f"rule {rule} places no key tile of block {btype}")
    return btype, placed[0]


def build_marked_supertile(context: Context, level: int, max_level: Optional[int] = None) -> Tuple[MarkedPatch, TileSet]:
    """
    Solve for the marked supertile of a T1 rule or a symbol.

    The patch covers 2^level x 2^(level+1) cells with free edges and holds
    the key tile of the rule's block (or of the symbol's s-atom) at (1, 0).

    Returns:
        (patch, tile set it was checked against)
    """
    from services.solver_service import solve, verify_patch

    max_level = max_level or Config.MAX_SUPERTILE_LEVEL
    if level < 1 or level > max_level:
        raise LevelLimitError(f"supertile level must be between 1 and {max_level}")
    region = Region(2 ** (level + 1), 2 ** level, Boundary.FREE)

    if isinstance(context, str) and context.strip() in set(RULE_FAMILIES) | set(RULE_ALIASES):
        tiles = closure(resolve_rules([context.strip()]))
        block, key = _rule_key_tile(context.strip())
        label = f"{RULE_LABELS[RULE_ALIASES.get(context.strip(), context.strip())]} block {block}"
    else:
        symbol = parse_symbol(context) if isinstance(context, str) else context
        if not symbol.is_deterministic:
            raise NotDeterministicError(f"{format_symbol(symbol)} is not deterministic")
        tiles = synthesize(symbol)
        s_atom = _atomic('s', min(symbol.s))
        key = atomic_tiles(s_atom).sorted_tiles()[0]
        label = format_symbol(symbol)
    result = solve(tiles, region, SolveMode.FIRST, preset={(1, 0): key})
    if result.status != SolveStatus.SAT:
        raise RuleMismatchError(f"{tiles.name} admits no level-{level} supertile around {key.name}: "
                                f"{result.status.value}")
    patch = result.tilings[0]
    violations = verify_patch(tiles, patch, region)
    if violations:
        raise TranscriptionError(f"supertile violates {violations[0].kind} at ({violations[0].x}, {violations[0].y})",
                                 f"level{level}")
    logger.info(f"Built level-{level} marked supertile for {label} from {tiles.name}")
    return patch, tiles
