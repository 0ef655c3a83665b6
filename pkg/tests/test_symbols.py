import pytest

from models.symbol import SymbolClass, format_symbol, parse_symbol
from services.symbol_service import (
    Prop2Class, atoms, canonical_rep, census, classify, det_components, equivalent, partner, prop2_classify,
    prop2_tally, symbol_shift
)
from utils.errors import NotFullSymbolError, SymbolParseError

def test_classify():
    assert classify(parse_symbol('1101')) == SymbolClass.DETERMINISTIC
    assert classify(parse_symbol('*1(23)0')) == SymbolClass.FULL
    assert classify(parse_symbol('1...')) == SymbolClass.ATOMIC
    assert classify(parse_symbol('(02)1.3')) == SymbolClass.PARTIAL

def test_format_sorts_groups():
    assert format_symbol(parse_symbol('(20)*.3')) == '(02)*.3'
    assert format_symbol(parse_symbol('(0123)000')) == '*000'

def test_middle_dot_reads_as_empty():
    assert parse_symbol('1·0·') == parse_symbol('1.0.')

@pytest.mark.parametrize("text, position", [
    ('12x4', 2),
    ('(01', 0),
    ('11111', 4),
    ('123', 3),
])
def test_parse_errors_carry_position(text, position):
    with pytest.raises(SymbolParseError) as excinfo:
        parse_symbol(text)
    assert excinfo.value.position == position

def test_partner():
    """(stuv)' swaps s and t and adds three everywhere."""
    assert partner(parse_symbol('0231')) == parse_symbol('1302')
    assert partner(parse_symbol('(01)2*.')) == parse_symbol('1(23)*.')

def test_partner_is_an_involution():
    for text in ('0231', '1101', '(02)1(13)*', '3.2.'):
        symbol = parse_symbol(text)
        assert partner(partner(symbol)) == symbol

def test_equivalence():
    assert equivalent(parse_symbol('0231'), parse_symbol('1302'))
    assert equivalent(parse_symbol('0231'), parse_symbol('0231'))
    assert not equivalent(parse_symbol('0000'), parse_symbol('1111'))

def test_canonical_rep():
    assert canonical_rep(parse_symbol('1302')) == parse_symbol('0231')
    assert canonical_rep(parse_symbol('0231')) == parse_symbol('0231')

def test_atoms_and_components():
    symbol = parse_symbol('(02)1(13)0')
    assert {format_symbol(a) for a in atoms(symbol)} == {'0...', '2...', '.1..', '..1.', '..3.', '...0'}
    assert len(det_components(symbol)) == 4
    assert all(c.is_deterministic for c in det_components(symbol))

def test_components_need_full_symbol():
    with pytest.raises(NotFullSymbolError):
        det_components(parse_symbol('1.0.'))

def test_shift():
    assert symbol_shift(parse_symbol('0231'), 1) == parse_symbol('1320')

def test_census_counts():
    result = census()
    assert result['full'] == 50625
    assert result['self_paired'] == 135
    assert result['classes'] == 25380
    assert result['det_symbols'] == 256
    assert result['det_classes'] == 128

def test_family_classification():
    assert prop2_classify(parse_symbol('0011')) == Prop2Class.NONPERIODIC_NONUNIQUE
    assert prop2_classify(parse_symbol('0000')) == Prop2Class.PERIODIC_NONUNIQUE
    assert prop2_classify(parse_symbol('(02)(02)33')) == Prop2Class.NONPERIODIC_NONUNIQUE
    assert prop2_classify(parse_symbol('1101')) == Prop2Class.NOT_APPLICABLE

def test_family_tally():
    tally = prop2_tally()
    assert tally['applicable'] == 36
    assert tally['nonperiodic'] == 30
    assert tally['deterministic'] == 16
    assert tally['deterministic_nonperiodic'] == 12
    assert tally['deterministic_shift_orbits'] == 4
