import random

import pytest

from models.domino import HORIZONTAL, VERTICAL, DominoPatch, PlacedDomino
from models.symbol import Symbol, parse_symbol
from services.symbol_service import deterministic_symbols, equivalent
from services.substitution_service import (
    Parse, SeededChooser, SequenceChooser, congruent, decompositions, deflate, expand, flip_v, hier_equiv_check,
    mirror_law_check, periodicity_scan, square_halves
)
from utils.errors import LevelLimitError, NotDeterministicError, NotFullSymbolError, TilingError

def test_level_zero_is_one_domino():
    patch = expand(parse_symbol('0231'), 0)
    assert patch.dominoes == frozenset({PlacedDomino(0, 0, HORIZONTAL, 0)})
    assert patch.to_dict()['width'] == 2
    assert patch.to_dict()['height'] == 1

def test_level_one_layout():
    """s and t stack on the left, u and v stand upright on the right."""
    patch = expand(parse_symbol('0231'), 1)
    assert patch.dominoes == frozenset({
        PlacedDomino(0, 1, HORIZONTAL, 0),
        PlacedDomino(0, 0, HORIZONTAL, 1),
        PlacedDomino(2, 0, VERTICAL, 3),
        PlacedDomino(3, 0, VERTICAL, 2),
    })

@pytest.mark.parametrize("level", [1, 2, 3])
def test_domino_count_grows_by_four(level):
    patch = expand(parse_symbol('1101'), level)
    assert len(patch) == 4 ** level
    assert patch.level == level

def test_expand_preconditions():
    with pytest.raises(NotFullSymbolError):
        expand(parse_symbol('1.01'), 1)
    with pytest.raises(LevelLimitError):
        expand(parse_symbol('1101'), -1)
    with pytest.raises(LevelLimitError):
        expand(parse_symbol('1101'), 5, max_level=4)

def test_sequence_chooser_picks_digits():
    patch = expand(parse_symbol('(01)000'), 1, SequenceChooser([1]))
    assert PlacedDomino(0, 1, HORIZONTAL, 1) in patch.dominoes

def test_sequence_chooser_rejects_disallowed_digit():
    with pytest.raises(TilingError):
        expand(parse_symbol('(01)000'), 1, SequenceChooser([2]))

def test_seeded_expansion_is_reproducible():
    symbol = parse_symbol('**00')
    assert expand(symbol, 3, SeededChooser(7)) == expand(symbol, 3, SeededChooser(7))

@pytest.mark.parametrize("level", [1, 2, 3])
def test_deflate_undoes_expand(level):
    """Holds for every deterministic symbol, including 0000, 0011 and 2121
    whose supertiles can be grouped into parents in more than one way."""
    for symbol in deterministic_symbols():
        assert deflate(expand(symbol, level), symbol) == expand(symbol, level - 1), symbol.codes()

def test_deflate_edge_cases():
    symbol = parse_symbol('1101')
    assert deflate(expand(symbol, 0), symbol) is None
    with pytest.raises(NotDeterministicError):
        deflate(expand(symbol, 1), parse_symbol('(01)101'))

def test_flip_changes_horizontal_codes_by_two():
    patch = DominoPatch.of([PlacedDomino(0, 0, HORIZONTAL, 1)])
    assert flip_v(patch).dominoes == frozenset({PlacedDomino(0, 0, HORIZONTAL, 3)})

@pytest.mark.parametrize("text", ['0231', '1101', '0000', '3120', '2013'])
@pytest.mark.parametrize("level", [1, 2, 3])
def test_mirror_law(text, level):
    assert mirror_law_check(parse_symbol(text), level)

def test_congruence():
    patch = expand(parse_symbol('0231'), 2)
    assert congruent(patch, patch.translated(5, 3))
    assert not congruent(patch, patch.relabeled(1))
    assert congruent(patch, patch.relabeled(1), ('translate', 'relabel'))
    with pytest.raises(TilingError):
        congruent(patch, patch, ('stretch',))

def test_hierarchies_of_distinct_symbols_differ():
    """0000 only ever uses codes 0 and 3, while 1111 reaches code 1."""
    assert {d.code for d in expand(parse_symbol('0000'), 3).dominoes} <= {0, 3}
    assert not hier_equiv_check(parse_symbol('0000'), parse_symbol('1111'), 3)
    assert hier_equiv_check(parse_symbol('0231'), parse_symbol('0231'), 3)
    with pytest.raises(LevelLimitError):
        hier_equiv_check(parse_symbol('0231'), parse_symbol('1302'), 1)

def test_square_halves():
    left, right = square_halves(expand(parse_symbol('0231'), 1))
    assert {d.axis for d in left.dominoes} == {HORIZONTAL}
    assert {d.axis for d in right.dominoes} == {VERTICAL}
    assert len(left) == len(right) == 2

def test_whole_supertile_parse():
    symbol = parse_symbol('1101')
    parses = decompositions(expand(symbol, 2), [symbol])
    assert parses == [Parse('1101', 'whole', 2, 'H0')]

def test_periodicity_scan():
    row = DominoPatch.of(PlacedDomino(x, 0, HORIZONTAL, 0) for x in (0, 2, 4, 6))
    assert periodicity_scan(row) == {(2, 0), (-2, 0)}
    assert periodicity_scan(expand(parse_symbol('0231'), 0)) == set()

def test_deflate_with_the_wrong_symbol():
    patch = expand(parse_symbol('0123'), 1)
    assert deflate(patch, parse_symbol('0011')) is None
    assert deflate(patch, parse_symbol('0123')) == expand(parse_symbol('0123'), 0)

def test_deflate_fragment_by_exact_cover():
    """A fragment that is not a whole supertile still groups into parents."""
    symbol = parse_symbol('1101')
    left, _ = square_halves(expand(symbol, 2))
    parents = deflate(left, symbol)
    assert parents is not None
    assert len(parents) == 2
    assert parents.level == 1

def test_level_one_supertile_of_two_symbols():
    """The level-1 supertile of 0011 is the one of 1100 framed by H2."""
    patch = expand(parse_symbol('0011'), 1)
    parses = decompositions(patch, [parse_symbol('0011'), parse_symbol('1100')])
    assert parses == [Parse('0011', 'whole', 1, 'H0'), Parse('1100', 'whole', 1, 'H2')]

def test_halves_of_0011_and_1100_coincide():
    first, second = parse_symbol('0011'), parse_symbol('1100')
    framed = {h.dominoes for h in square_halves(expand(first, 2))}
    assert framed == {h.dominoes for h in square_halves(expand(second, 2))}
    for level in (2, 3, 4):
        shapes = {h.shapes() for h in square_halves(expand(first, level))}
        assert shapes == {h.shapes() for h in square_halves(expand(second, level))}

def test_half_has_exactly_two_parses():
    """One reading splits the half across its width, the other along it."""
    first, second = parse_symbol('0011'), parse_symbol('1100')
    left, _ = square_halves(expand(first, 2))
    parses = decompositions(left, [first, second])
    assert len(parses) == 2
    assert {p.symbol for p in parses} == {'0011', '1100'}
    assert {p.part for p in parses} == {'half'}

def test_whole_parse_is_unique():
    symbol = parse_symbol('0123')
    assert len(decompositions(expand(symbol, 2), [symbol])) == 1

def test_no_parse_for_small_or_foreign_patches():
    symbol = parse_symbol('0123')
    assert decompositions(expand(symbol, 0), [symbol]) == []
    row = DominoPatch.of(PlacedDomino(x, 0, HORIZONTAL, 0) for x in (0, 2, 4, 6))
    assert decompositions(row, [symbol]) == []

def test_0000_is_periodic():
    assert periodicity_scan(expand(parse_symbol('0000'), 3))

def test_random_distinct_hierarchies():
    rng = random.Random(11)
    symbols = deterministic_symbols()
    checked = 0
    while checked < 50:
        first, second = rng.sample(symbols, 2)
        if equivalent(first, second):
            continue
        assert not hier_equiv_check(first, second, 3)
        checked += 1

def test_mirror_law_on_random_symbols():
    rng = random.Random(5)
    for codes in (tuple(rng.randrange(4) for _ in range(4)) for _ in range(100)):
        assert mirror_law_check(Symbol.deterministic(*codes), 3), codes
