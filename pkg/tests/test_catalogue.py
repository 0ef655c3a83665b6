import pytest

from models.tile import TileRole, placements
from services.catalogue_service import (
    TileSpec, catalogue, forget_d, format_tile_name, mutually_excludable, pair_tile_names, parse_tile_name,
    tile_from_name, tile_shift
)
from utils.errors import ContextError, TileNameError, UnknownCatalogueError

def test_parse_outward_names():
    assert parse_tile_name('<A>') == TileSpec('T1', True, 'A', None, '+', False)
    assert parse_tile_name('<B2*>') == TileSpec('T2', True, 'B', 2, '+', True)

def test_parse_crossing_names():
    assert parse_tile_name('[-3+]') == TileSpec('T1', False, '-3', None, '+')
    assert parse_tile_name('[13|00]') == TileSpec('T2', False, '1', 3, (0, 0))
    assert parse_tile_name('[-|+]') == TileSpec('T2', False, '-', None, '+')

def test_format_inverts_parse():
    for name in ('<A>', '<B2*>', '[-3+]', '[02]', '[13|00]', '[-|21]', '[-32|+]'):
        assert format_tile_name(parse_tile_name(name)) == name

def test_bad_names_rejected():
    for name in ('[x]', '<C>', '[13|0]', 'A'):
        with pytest.raises(TileNameError):
            parse_tile_name(name)

def test_roles():
    assert tile_from_name('<A*>').role == TileRole.OUTWARD
    assert tile_from_name('<A*>').cornered
    assert tile_from_name('[-+]').role == TileRole.CROSSING

def test_mirror_alias_resolves_to_canonical_name():
    """[31|+] is the mirror image of [30|+]."""
    assert tile_from_name('[31|+]').name == '[30|+]'
    assert tile_from_name('[31|+]') == tile_from_name('[30|+]')

def test_pair_alias():
    assert set(pair_tile_names(0, '+')) == set(pair_tile_names(1, '+'))
    assert set(pair_tile_names(0, '+')) == {'[30|+]', '[-32|+]'}

def test_placements_are_distinct_images():
    images = placements(tile_from_name('[-+]'))
    assert len(images) == len({edges for _, edges in images})
    assert 1 <= len(images) <= 8

def test_catalogue_sizes():
    assert len(catalogue('T+')) == 4
    assert len(catalogue('T_hv')) == 23
    assert len(catalogue('T1')) == 27
    assert len(catalogue('T_Pi')) == 16
    assert len(catalogue('T_par')) == 17
    assert len(catalogue('T_Xi')) == 18
    assert len(catalogue('T_Pibar')) == 26
    assert len(catalogue('T+2')) == 16

def test_pibar_drops_one_tile():
    assert catalogue('T_Pibar').members == catalogue('T1').members - {tile_from_name('[02]')}

def test_catalogue_aliases():
    assert catalogue('T_Π').name == 'T_Pi'
    assert catalogue('T₁') == catalogue('T1')

def test_unknown_catalogue():
    with pytest.raises(UnknownCatalogueError):
        catalogue('T_nope')

def test_catalogue_order_puts_outward_tiles_first():
    tiles = catalogue('T1').to_dict()['tiles']
    assert [t['name'] for t in tiles[:4]] == ['<A>', '<A*>', '<B>', '<B*>']
    assert all(t['role'] == 'CROSSING' for t in tiles[4:])

def test_block_sets_are_mutually_excludable():
    assert mutually_excludable(catalogue('T_U'), catalogue('T_I'))
    assert not mutually_excludable(catalogue('T_U'), catalogue('T1'))

def test_forget_d():
    assert forget_d(tile_from_name('[13|00]')) == tile_from_name('[10]')
    with pytest.raises(ContextError):
        forget_d(tile_from_name('[10]'))

def test_tile_shift():
    """Framing codes move by k on every marked edge."""
    assert tile_shift(tile_from_name('[13|00]'), 2) == tile_from_name('[11|02]')
    assert tile_shift(tile_from_name('[-|+]'), 1) == tile_from_name('[-|+]')
    with pytest.raises(ContextError):
        tile_shift(tile_from_name('[-+]'), 1)
