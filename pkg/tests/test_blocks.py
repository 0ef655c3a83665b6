import pytest

from models.block import BlockState
from models.symbol import SLOTS, parse_symbol
from services.block_service import (
    block_admissibility, block_substitute, closure, crossing_names, atomic_names, derive_atomics, enforced_rules,
    frame_assignment, interface_table, negate, resolve_rules, t2_block_substitute, t2_closure
)
from services.catalogue_service import catalogue, tile_from_name
from services.synthesis_service import atomic_table, pair_table
from utils.errors import NotDeterministicError, RuleMismatchError

@pytest.mark.parametrize("rule, name, size", [
    ('pi', 'T_Pi', 16),
    ('par', 'T_par', 17),
    ('xi', 'T_Xi', 18),
    ('pibar', 'T_Pibar', 26),
])
def test_closures_reproduce_rule_sets(rule, name, size):
    tiles = closure([rule])
    assert len(tiles) == size
    assert tiles.members == catalogue(name).members

def test_closure_name_lists_rules():
    assert closure(['pi']).name == 'closure(pi)'
    assert closure(['pibar']).name == 'closure(pibar02+pibar13)'

def test_resolve_rules():
    assert resolve_rules(['pibar']) == ['pibar02', 'pibar13']
    assert resolve_rules(['Π', 'pi']) == ['pi']
    with pytest.raises(RuleMismatchError):
        resolve_rules(['sigma'])

def test_frame_assignment():
    frame = frame_assignment('U')
    assert frame['ii'] == 'x'
    assert frame['v'] == '1'
    with pytest.raises(RuleMismatchError):
        frame_assignment('Q')

def test_negate():
    assert negate('3') == '-3'
    assert negate('-x') == 'x'

def test_block_substitute_resolves_marking():
    children, tally = block_substitute('pi', BlockState('U', '3'))
    assert children == [BlockState('U', '+'), BlockState('I', '3'), BlockState('I', '-3')]
    assert tally == {'[11]', '[-0]', '[-1]', '[1+]', '[-+]', '[03]'}

def test_block_substitute_inward_class():
    """[3x] under an inward marking reads as [-3...] and vice versa."""
    _, tally = block_substitute('pi', BlockState('I', '-1'))
    assert {'[-31]', '[31]'} <= tally

def test_block_substitute_keeps_symbolic_tiles():
    _, tally = block_substitute('pi', BlockState('U'))
    assert '[0x]' in tally

def test_rule_must_apply_to_block():
    with pytest.raises(RuleMismatchError):
        block_substitute('pi', BlockState('J'))

@pytest.mark.parametrize("name, blocks", [
    ('T_Pi', {'I', 'U'}),
    ('T_par', {'J'}),
    ('T_Xi', {'H', 'U'}),
    ('T_Pibar', {'H', 'J', 'U'}),
    ('T1', {'H', 'I', 'J', 'U'}),
])
def test_block_admissibility(name, blocks):
    assert block_admissibility(catalogue(name)) == blocks

def test_enforced_rules():
    assert enforced_rules(catalogue('T1')) == {'pi', 'par', 'xi', 'pibar'}
    assert 'pi' in enforced_rules(catalogue('T_Pi'))
    assert 'pibar' not in enforced_rules(catalogue('T_Pi'))

def test_interface_table_is_complete():
    table = interface_table()
    assert len(table) == 16
    assert all(len(row) == 4 for row in table.values())

def test_crossings_outside_the_base_are_atomic():
    base = catalogue('T0')
    for slot in SLOTS:
        for d in range(4):
            crossings = crossing_names(slot, d)
            assert atomic_names(slot, d) <= crossings
            assert all(tile_from_name(n) in base for n in crossings - atomic_names(slot, d))

def test_atomic_names_of_an_h_child():
    expected = {tile_from_name(n).name for n in ('[10|33]', '[11|31]', '[12|23]', '[13|21]')}
    assert atomic_names('u', 0) == expected

def test_derivation_matches_transcribed_tables():
    """Tables built from frames, productions and framing equal the transcribed ones."""
    atomic, pairs = derive_atomics()
    assert {k: v.members for k, v in atomic.items()} == {k: v.members for k, v in atomic_table().items()}
    assert {k: v.members for k, v in pairs.items()} == {k: v.members for k, v in pair_table().items()}

def test_interface_rows_obey_the_partner_law():
    table = interface_table()
    swap = {'s': 't', 't': 's'}
    for (slot, g), row in table.items():
        partner = table[(swap.get(slot, slot), g ^ 3)]
        for column, entry in row.items():
            moved = partner[swap.get(column, column)]
            if entry == '+':
                assert moved == '+'
                continue
            kind, zw = entry
            assert moved == ('b' if kind == 'd' else 'd', f"{zw[0]}{int(zw[1]) ^ 2}")

def test_derived_tables_have_every_entry():
    atomic, pairs = derive_atomics()
    assert len(atomic) == 16
    assert len(pairs) == 256
    assert all(len(tiles) == 2 for tiles in pairs.values())

def test_t2_substitution_places_four_children():
    children, tally = t2_block_substitute(parse_symbol('1101'), BlockState('H', 'x'))
    assert [(c.slot, c.orient) for c in children] == [('s', 1), ('t', 1), ('u', 0), ('v', 1)]
    assert [c.btype for c in children] == ['J', 'J', 'H', 'U']
    for child in children:
        assert crossing_names(child.slot, child.orient) <= tally

def test_t2_substitution_needs_deterministic_symbol():
    with pytest.raises(NotDeterministicError):
        t2_block_substitute(parse_symbol('(01)101'), BlockState('H', 'x'))

def test_t2_closure_starts_from_base_tiles():
    base = set(catalogue('T+2').names()) | set(catalogue('T0').names())
    assert t2_closure(parse_symbol('1101'), 0) == base
    assert t2_closure(parse_symbol('1101'), 2) > base
