import itertools
from collections import defaultdict

import pytest

from models.mark import mark_complement, mark_matches, parse_mark
from models.symbol import parse_symbol
from models.patch import Boundary, MarkedPatch, Region, SolveMode, SolveStatus
from models.tile import TileSet, placements
from services.catalogue_service import catalogue, tile_from_name
from services.solver_service import (
    balance_feasible, count_tilings, iter_solutions, solve, torus_search, verify_patch
)
from services.synthesis_service import build_marked_supertile, synthesize
from utils.errors import BudgetExceededError, LevelLimitError

def test_verify_reports_edge_mismatch():
    tile = tile_from_name('[-+]')
    patch = MarkedPatch({(0, 0): (tile, 0), (1, 0): (tile, 0)})
    violations = verify_patch(catalogue('T1'), patch)
    assert [(v.x, v.y, v.kind) for v in violations] == [(0, 0, 'EDGE')]

def test_verify_reports_missing_cornered_tile():
    patch, tiles = build_marked_supertile('pibar', 1)
    cells = {cell: (tile_from_name(tile.name.replace('*', '')) if tile.cornered else tile, pose)
             for cell, (tile, pose) in patch.cells.items()}
    violations = verify_patch(tiles, MarkedPatch(cells), Region(4, 2))
    assert violations
    assert {v.kind for v in violations} == {'VERTEX'}

def test_verify_reports_membership():
    patch, tiles = build_marked_supertile('pibar', 1)
    key = patch.cells[(1, 0)][0]
    violations = verify_patch(tiles.difference(TileSet.of('key', [key])), patch)
    assert (1, 0, 'MEMBERSHIP') in [(v.x, v.y, v.kind) for v in violations]
    assert {v.kind for v in violations} == {'MEMBERSHIP'}

def test_preset_cell_holds_its_tile():
    key = tile_from_name('[02]')
    result = solve(catalogue('T1'), Region(2, 2), preset={(1, 1): key})
    assert result.status == SolveStatus.SAT
    assert result.witness.cells[(1, 1)][0] == key
    with pytest.raises(ValueError):
        solve(catalogue('T1'), Region(2, 2), preset={(5, 5): key})

def test_solve_finds_admitted_tiling():
    tiles = catalogue('T1')
    region = Region(2, 2)
    result = solve(tiles, region)
    assert result.status == SolveStatus.SAT
    assert len(result.witness) == 4
    assert verify_patch(tiles, result.witness, region) == []

def test_outward_tiles_never_touch():
    result = solve(catalogue('T+'), Region(2, 1))
    assert result.status == SolveStatus.UNSAT
    assert result.witness is None

def test_count_single_cell():
    tiles = catalogue('T+')
    expected = sum(len(placements(tile)) for tile in tiles)
    assert solve(tiles, Region(1, 1), 'COUNT').count == expected
    assert count_tilings(tiles, Region(1, 1)) == expected

def test_all_mode_returns_every_tiling():
    tiles = catalogue('T+')
    result = solve(tiles, Region(1, 1), SolveMode.ALL)
    assert len(result.tilings) == result.count

def test_count_budget_exceeded():
    with pytest.raises(BudgetExceededError):
        count_tilings(catalogue('T1'), Region(3, 3), budget=10)

def test_solve_timeout_is_a_status():
    result = solve(catalogue('T1'), Region(3, 3), SolveMode.COUNT, budget=10)
    assert result.status == SolveStatus.TIMEOUT
    assert result.reason

def test_fixed_boundary():
    inward = parse_mark('-', 'T1')
    region = Region(1, 1, Boundary.FIXED, (((0, 0, 'N'), inward),))
    assert solve(catalogue('T+'), region).status == SolveStatus.UNSAT
    result = solve(catalogue('T1'), region)
    assert result.status == SolveStatus.SAT
    assert result.witness.edges_at((0, 0))[0] == inward

def test_iter_solutions_streams_valid_tilings():
    tiles = catalogue('T1')
    region = Region(2, 2)
    first = next(iter_solutions(tiles, region))
    assert verify_patch(tiles, first, region) == []

def test_torus_needs_even_periods():
    region_result = torus_search(catalogue('T1'), 3, 4)
    assert region_result.status == SolveStatus.NONE_BY_PARITY
    with pytest.raises(ValueError):
        Region(3, 4, Boundary.TORUS)

def test_balance():
    """Crossing tiles show one outward mark, outward tiles four; half of all marks point out."""
    assert not balance_feasible(catalogue('T+'), 2, 2)
    assert not balance_feasible(catalogue('T1'), 4, 4)
    assert balance_feasible(catalogue('T1'), 6, 6)

def test_torus_none_by_balance():
    assert torus_search(catalogue('T1'), 4, 4).status == SolveStatus.NONE
    assert torus_search(catalogue('T+'), 2, 2).status == SolveStatus.NONE

def test_torus_period_limit():
    with pytest.raises(LevelLimitError):
        torus_search(catalogue('T1'), 10, 10, max_period=8)

def _brute_force_count(tiles, region):
    """Count tilings by listing matched rows and stacking them."""
    options = [(tile, pose, edges) for tile in tiles for pose, edges in placements(tile)]
    rows = [row for row in itertools.product(options, repeat=region.width)
            if all(mark_matches(left[2][1], right[2][3]) for left, right in zip(row, row[1:]))]
    by_north = defaultdict(list)
    for row in rows:
        by_north[tuple(cell[2][0] for cell in row)].append(row)

    def stacks(height):
        if height == 1:
            for row in rows:
                yield [row]
            return
        for grid in stacks(height - 1):
            wanted = tuple(mark_complement(cell[2][2]) for cell in grid[-1])
            for row in by_north.get(wanted, []):
                yield grid + [row]

    count = 0
    for grid in stacks(region.height):
        patch = MarkedPatch({(x, y): (grid[y][x][0], grid[y][x][1])
                             for y in range(region.height) for x in range(region.width)})
        if not verify_patch(tiles, patch, region):
            count += 1
    return count

@pytest.mark.parametrize("width, height", [(3, 2), (2, 3)])
def test_count_matches_brute_force(width, height):
    tiles = catalogue('T_U').union(catalogue('T+'), name='T_U+')
    region = Region(width, height)
    assert count_tilings(tiles, region) == _brute_force_count(tiles, region)

def test_count_matches_brute_force_on_t1():
    tiles = catalogue('T1')
    region = Region(2, 2)
    expected = _brute_force_count(tiles, region)
    assert expected > 0
    assert count_tilings(tiles, region) == expected

def test_every_listed_tiling_is_admitted():
    tiles = catalogue('T1')
    region = Region(2, 2)
    result = solve(tiles, region, SolveMode.ALL)
    assert result.count == len(result.tilings)
    assert all(verify_patch(tiles, tiling, region) == [] for tiling in result.tilings)

@pytest.mark.parametrize("width", [2, 4, 6])
@pytest.mark.parametrize("height", [2, 4, 6])
def test_synthesized_set_has_no_small_torus(width, height):
    result = torus_search(synthesize(parse_symbol('1101')), width, height)
    assert result.status == SolveStatus.NONE

def test_torus_odd_period_is_parity():
    assert torus_search(synthesize(parse_symbol('1101')), 4, 5).status == SolveStatus.NONE_BY_PARITY
