import random

import pytest

from models.patch import Region
from models.symbol import SLOTS, Symbol, parse_symbol
from services.block_service import closure, derive_atomics
from services.catalogue_service import catalogue, tileset_shift
from services.solver_service import verify_patch
from services.symbol_service import det_components, deterministic_symbols, partner
from services.synthesis_service import (
    atomic_table, atomic_tiles, base_tiles, build_marked_supertile, pair_table, shift_law_check, synthesize,
    theorem1_row, theorem1_sets, usage_check
)
from utils.errors import LevelLimitError, NotDeterministicError, NotFullSymbolError, TilingError

def test_worked_examples():
    assert len(synthesize(parse_symbol('1101'))) == 67
    assert len(synthesize(parse_symbol('1023'))) == 65

def test_base_tiles():
    assert len(base_tiles()) == 35
    assert base_tiles().issubset(synthesize(parse_symbol('0000')))

def test_fixtures_agree_with_derivation():
    atomic, pairs = derive_atomics()
    table = atomic_table()
    assert set(table) == set(atomic)
    assert all(table[alpha].members == atomic[alpha].members for alpha in atomic)
    assert len(pair_table()) == len(pairs) == 256

def test_atomic_lookup_needs_atomic_symbol():
    assert len(atomic_tiles(parse_symbol('1...'))) == 5
    with pytest.raises(TilingError):
        atomic_tiles(parse_symbol('11..'))

def test_synthesis_needs_full_symbol():
    with pytest.raises(NotFullSymbolError):
        synthesize(parse_symbol('1.01'))

def test_shift_law_for_every_deterministic_symbol():
    for symbol in deterministic_symbols():
        assert shift_law_check(symbol)

@pytest.mark.parametrize("text", ['(01)101', '*(23)0(13)', '****'])
def test_shift_law_for_full_symbols(text):
    symbol = parse_symbol(text)
    assert synthesize(partner(symbol)).members == tileset_shift(synthesize(symbol), 2).members

def test_full_symbol_covers_its_components():
    symbol = parse_symbol('(01)1(02)1')
    tiles = synthesize(symbol)
    for component in det_components(symbol):
        assert synthesize(component).issubset(tiles)

def test_classification_rows():
    rows = {row.name: row for row in theorem1_sets()}
    assert len(rows) == 9
    assert rows['T_Pibar'].blocks == ('H', 'J', 'U')
    assert rows['T_Pi'].rules[0] == 'pi'
    assert rows['T1'].rules == ('pi', 'par', 'xi', 'pibar')
    assert theorem1_row('T_par').to_dict()['size'] == 17

def test_unknown_row():
    with pytest.raises(TilingError):
        theorem1_row('T_nope')

def test_usage_at_level_zero_leaves_the_atomic_tiles():
    symbol = parse_symbol('1101')
    unused = usage_check(symbol, 0)
    assert len(unused) == 67 - 35
    assert usage_check(symbol, 2) < unused

@pytest.mark.parametrize("level", [1, 2])
@pytest.mark.parametrize("context, block", [('pi', 'U'), ('par', 'J'), ('xi', 'U'), ('pibar', 'H')])
def test_rule_supertile_is_admitted(context, block, level):
    patch, tiles = build_marked_supertile(context, level)
    region = Region(2 ** (level + 1), 2 ** level)
    assert set(patch.cells) == set(region.cells)
    assert tiles.members == closure([context]).members
    assert verify_patch(tiles, patch, region) == []
    assert patch.cells[(1, 0)][0] in catalogue(f"T_{block}")

@pytest.mark.parametrize("level", [1, 2])
@pytest.mark.parametrize("text", ['1101', '1023'])
def test_symbol_supertile_is_admitted(text, level):
    patch, tiles = build_marked_supertile(text, level)
    region = Region(2 ** (level + 1), 2 ** level)
    assert tiles == synthesize(parse_symbol(text))
    assert len(patch) == 2 ** (2 * level + 1)
    assert verify_patch(tiles, patch, region) == []
    assert patch.cells[(1, 0)][0] in atomic_tiles(parse_symbol(f"{text[0]}..."))

def test_rule_aliases_build_the_same_supertile():
    assert build_marked_supertile('Π̄', 1)[0] == build_marked_supertile('pibar', 1)[0]

def test_supertile_needs_deterministic_symbol():
    with pytest.raises(NotDeterministicError):
        build_marked_supertile('(01)101', 1)

def test_supertile_level_limits():
    with pytest.raises(LevelLimitError):
        build_marked_supertile('pibar', 0)
    with pytest.raises(LevelLimitError):
        build_marked_supertile('pibar', 3)

def test_rule_supertile_stays_inside_theorem_row():
    for level in (1, 2):
        patch, _ = build_marked_supertile('pibar', level)
        assert verify_patch(catalogue('T_Pibar'), patch) == []

def test_shift_law_on_random_full_symbols():
    rng = random.Random(17)
    for _ in range(500):
        symbol = Symbol.of(*(rng.sample(range(4), rng.randint(1, 4)) for _ in SLOTS))
        assert shift_law_check(symbol)

@pytest.mark.parametrize("text", ['1101', '1023'])
def test_every_tile_is_used_by_level_three(text):
    symbol = parse_symbol(text)
    assert usage_check(symbol, 3) == set()
    assert usage_check(symbol, 2) >= usage_check(symbol, 3)
