"""
Patch solver service.
Edge-matching backtracking over (tile, pose) assignments on finite regions
and tori, patch verification and tiling counts.
"""
import logging
from collections import defaultdict
from typing import Dict, Iterator, List, NamedTuple, Optional, Set, Tuple

from config import Config
from models.mark import EdgeMark, mark_complement, mark_matches
from models.patch import Boundary, Cell, MarkedPatch, Region, SolveMode, SolveResult, SolveStatus, Violation
from models.tile import SIDES, Edges, Tile, TileSet, placements
from services.catalogue_service import tile_order_key
from utils.errors import BudgetExceededError, LevelLimitError

logger = logging.getLogger(__name__)

N, E, S, W = range(4)


class Option(NamedTuple):
    tile: Tile
    pose: int
    edges: Edges


class _OutOfBudget(Exception):
    pass


def _options(tiles: TileSet) -> List[Option]:
    return [Option(tile, pose, edges)
            for tile in sorted(tiles, key=tile_order_key)
            for pose, edges in placements(tile)]


def _corners(cell: Cell) -> Tuple[Cell, ...]:
    x, y = cell
    return (x, y), (x + 1, y), (x, y + 1), (x + 1, y + 1)


# --- verification ----------------------------------------------------------

def verify_patch(tiles: TileSet, patch: MarkedPatch, region: Optional[Region] = None) -> List[Violation]:
    """
    Check membership, edge matching and the cornered-vertex rule.

    Returns:
        List of violations; empty when the patch is admitted
    """
    violations: List[Violation] = []
    torus = region is not None and region.boundary == Boundary.TORUS
    cells = patch.cells

    def wrap(cell):
        if torus:
            return cell[0] % region.width, cell[1] % region.height
        return cell

    for (x, y), tile, pose in patch.sorted_cells():
        if tile not in tiles:
            violations.append(Violation(x, y, 'MEMBERSHIP', f"{tile.name or 'unnamed tile'} not in {tiles.name}"))
        edges = tile.posed(pose)
        for side, (dx, dy), facing in ((E, (1, 0), W), (S, (0, 1), N)):
            other = wrap((x + dx, y + dy))
            if other not in cells:
                continue
            theirs = patch.edges_at(other)[facing]
            if not mark_matches(edges[side], theirs):
                violations.append(Violation(x, y, 'EDGE', f"{SIDES[side]} edge does not match cell {other}"))
        if region is not None and region.boundary == Boundary.FIXED:
            for side_index, side in enumerate(SIDES):
                wanted = region.fixed_marks().get((x, y, side))
                if wanted is not None and edges[side_index] != wanted:
                    violations.append(Violation(x, y, 'EDGE', f"{side} edge differs from the fixed boundary"))

    around: Dict[Cell, List[Cell]] = defaultdict(list)
    for cell in cells:
        for vertex in _corners(cell):
            around[wrap(vertex)].append(cell)
    for vertex in sorted(around, key=lambda v: (v[1], v[0])):
        touching = around[vertex]
        cornered = sum(1 for cell in touching if cells[cell][0].cornered)
        if cornered > 1:
            violations.append(Violation(vertex[0], vertex[1], 'VERTEX', f"{cornered} cornered tiles meet"))
        elif len(touching) == 4 and cornered != 1:
            violations.append(Violation(vertex[0], vertex[1], 'VERTEX', "no cornered tile at an interior vertex"))
    return violations


# --- search ----------------------------------------------------------------

OPPOSITE = (S, W, N, E)
STEPS = ((0, -1), (1, 0), (0, 1), (-1, 0))
SUPPORT_CACHE_LIMIT = 100_000


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class _Search:
    """
    Constraint propagation over bitset domains, one bit per option.

    Edges are kept arc consistent, every vertex keeps at most one cornered
    tile (exactly one when four cells meet), and on a torus the a and b
    channels of each row and column must cancel. Branching takes the cell
    with the fewest options left.
    """

    def __init__(self, tiles: TileSet, region: Region, budget: int, anchor_cornered: bool = False,
                 preset: Optional[Dict[Cell, Tile]] = None):
        self.region = region
        self.budget = budget
        self.nodes = 0
        self.torus = region.boundary == Boundary.TORUS
        self.options = _options(tiles)
        self.full = (1 << len(self.options)) - 1
        self.cells = region.cells
        self.index = {cell: i for i, cell in enumerate(self.cells)}
        self.anchor_cornered = anchor_cornered
        self.preset = preset or {}

        self.side_masks: List[Dict[EdgeMark, int]] = [defaultdict(int) for _ in SIDES]
        self.cornered = 0
        for bit, option in enumerate(self.options):
            for side in range(4):
                self.side_masks[side][option.edges[side]] |= 1 << bit
            if option.tile.cornered:
                self.cornered |= 1 << bit
        # side -> (options showing m on the facing side, options here that match m)
        self.supports = [
            [(mask, self.side_masks[side].get(mark_complement(mark), 0))
             for mark, mask in self.side_masks[OPPOSITE[side]].items()]
            for side in range(4)
        ]
        self._support_cache: Dict[Tuple[int, int], int] = {}

        self.links = [self._links(cell) for cell in self.cells]
        self.vertices, self.cell_vertices = self._vertex_table()
        if self.torus:
            self.rows = [[self.index[(x, y)] for x in range(region.width)] for y in range(region.height)]
            self.columns = [[self.index[(x, y)] for y in range(region.height)] for x in range(region.width)]
            self.row_values = self._channel_masks(E, W)
            self.column_values = self._channel_masks(N, S)

    def _links(self, cell: Cell) -> List[Tuple[int, int]]:
        x, y = cell
        found = []
        for side, (dx, dy) in enumerate(STEPS):
            other = (x + dx, y + dy)
            if self.torus:
                other = other[0] % self.region.width, other[1] % self.region.height
            if other in self.index:
                found.append((side, self.index[other]))
        return found

    def _vertex(self, vertex: Cell) -> Cell:
        if self.torus:
            return vertex[0] % self.region.width, vertex[1] % self.region.height
        return vertex

    def _vertex_table(self):
        around: Dict[Cell, List[int]] = defaultdict(list)
        for cell in self.cells:
            for vertex in _corners(cell):
                around[self._vertex(vertex)].append(self.index[cell])
        vertices = [cells for cells in around.values() if len(cells) > 1]
        cell_vertices: List[List[int]] = [[] for _ in self.cells]
        for number, cells in enumerate(vertices):
            for i in cells:
                cell_vertices[i].append(number)
        return vertices, cell_vertices

    def _channel_masks(self, first: int, second: int) -> List[Dict[int, int]]:
        """Per channel, options grouped by the sum of that channel over two opposite sides."""
        channels = [defaultdict(int), defaultdict(int)]
        for bit, option in enumerate(self.options):
            one, two = option.edges[first], option.edges[second]
            channels[0][one.a + two.a] |= 1 << bit
            channels[1][one.b + two.b] |= 1 << bit
        return [dict(c) for c in channels]

    # -- propagation --

    def _support(self, side: int, neighbour: int) -> int:
        key = (side, neighbour)
        cached = self._support_cache.get(key)
        if cached is None:
            if len(self._support_cache) > SUPPORT_CACHE_LIMIT:
                self._support_cache.clear()
            cached = 0
            for mask, matching in self.supports[side]:
                if mask & neighbour:
                    cached |= matching
            self._support_cache[key] = cached
        return cached

    def _initial(self) -> List[int]:
        domains = [self.full] * len(self.cells)
        if self.region.boundary == Boundary.FIXED:
            for (x, y, side), wanted in self.region.fixed_marks().items():
                if (x, y) in self.index:
                    domains[self.index[(x, y)]] &= self.side_masks[SIDES.index(side)].get(wanted, 0)
        if self.anchor_cornered:
            domains[0] &= self.cornered
        for cell, tile in self.preset.items():
            if cell not in self.index:
                raise ValueError(f"preset cell {cell} lies outside the region")
            wanted = sum(1 << bit for bit, option in enumerate(self.options) if option.tile == tile)
            domains[self.index[cell]] &= wanted
        return domains

    def _vertex_rule(self, domains: List[int], cells: List[int], changed: Set[int]) -> bool:
        definite = [i for i in cells if not domains[i] & ~self.cornered]
        if len(definite) > 1:
            return False
        if definite:
            for i in cells:
                if i != definite[0] and domains[i] & self.cornered:
                    domains[i] &= ~self.cornered
                    if not domains[i]:
                        return False
                    changed.add(i)
            return True
        if len(cells) == 4:
            possible = [i for i in cells if domains[i] & self.cornered]
            if not possible:
                return False
            if len(possible) == 1:
                domains[possible[0]] &= self.cornered
                changed.add(possible[0])
        return True

    def _propagate(self, domains: List[int], queue: Set[int]) -> bool:
        while queue:
            i = queue.pop()
            for side, j in self.links[i]:
                # j sees i across the opposite side
                narrowed = domains[j] & self._support(OPPOSITE[side], domains[i])
                if narrowed != domains[j]:
                    if not narrowed:
                        return False
                    domains[j] = narrowed
                    queue.add(j)
            for number in self.cell_vertices[i]:
                if not self._vertex_rule(domains, self.vertices[number], queue):
                    return False
        return not self.torus or self._torus_sums(domains)

    def _bounds(self, domains: List[int], line: List[int], values: Dict[int, int]) -> Tuple[int, int]:
        low = high = 0
        for i in line:
            present = [value for value, mask in values.items() if mask & domains[i]]
            low += min(present)
            high += max(present)
        return low, high

    def _torus_sums(self, domains: List[int]) -> bool:
        """Every edge of a closed row or column cancels in the a and b channels."""
        for lines, channels in ((self.rows, self.row_values), (self.columns, self.column_values)):
            for line in lines:
                for values in channels:
                    low, high = self._bounds(domains, line, values)
                    if low > 0 or high < 0:
                        return False
        corners = len(self.cells) // 4
        definite = sum(1 for d in domains if not d & ~self.cornered)
        possible = sum(1 for d in domains if d & self.cornered)
        return definite <= corners <= possible

    # -- branching --

    def run(self) -> Iterator[MarkedPatch]:
        domains = self._initial()
        if not all(domains):
            return
        if self._propagate(domains, set(range(len(self.cells)))):
            yield from self._branch(domains)

    def _branch(self, domains: List[int]) -> Iterator[MarkedPatch]:
        open_cells = [i for i, d in enumerate(domains) if d & (d - 1)]
        if not open_cells:
            yield MarkedPatch({cell: (self.options[domains[i].bit_length() - 1].tile,
                                      self.options[domains[i].bit_length() - 1].pose)
                               for i, cell in enumerate(self.cells)})
            return
        cell = min(open_cells, key=lambda i: (bin(domains[i]).count('1'), i))
        for bit in _bits(domains[cell]):
            self.nodes += 1
            if self.nodes > self.budget:
                raise _OutOfBudget()
            trial = list(domains)
            trial[cell] = 1 << bit
            if self._propagate(trial, {cell}):
                yield from self._branch(trial)


def solve(tiles: TileSet, region: Region, mode: SolveMode = SolveMode.FIRST,
          budget: Optional[int] = None, preset: Optional[Dict[Cell, Tile]] = None) -> SolveResult:
    """
    Tile a region with the set; preset cells must hold the given tile in some pose.

    Returns:
        SolveResult; SAT carries the witness (FIRST) or every tiling (ALL),
        COUNT carries only the count
    """
    budget = budget or Config.SOLVER_NODE_BUDGET
    return _collect(_Search(tiles, region, budget, preset=preset), tiles, SolveMode(mode))


def _collect(search: _Search, tiles: TileSet, mode: SolveMode) -> SolveResult:
    region, budget = search.region, search.budget
    tilings: List[MarkedPatch] = []
    count = 0
    status = None
    try:
        for tiling in search.run():
            count += 1
            if mode != SolveMode.COUNT:
                tilings.append(tiling)
            if mode == SolveMode.FIRST:
                break
    except _OutOfBudget:
        status = SolveStatus.TIMEOUT
    if status is None:
        status = SolveStatus.SAT if count else SolveStatus.UNSAT
    reason = f"node budget {budget} exhausted" if status == SolveStatus.TIMEOUT else None
    logger.info(f"Solve {region.width}x{region.height} {region.boundary.value} with {tiles.name}: "
                f"{status.value} after {search.nodes} nodes")
    return SolveResult(status, tilings, count, search.nodes, reason)


def iter_solutions(tiles: TileSet, region: Region, budget: Optional[int] = None) -> Iterator[MarkedPatch]:
    """Stream tilings in enumeration order; stops silently at the budget."""
    search = _Search(tiles, region, budget or Config.SOLVER_NODE_BUDGET)
    try:
        yield from search.run()
    except _OutOfBudget:
        logger.warning(f"Solution stream stopped after {search.nodes} nodes")


def count_tilings(tiles: TileSet, region: Region, budget: Optional[int] = None) -> int:
    result = solve(tiles, region, SolveMode.COUNT, budget)
    if result.status == SolveStatus.TIMEOUT:
        raise BudgetExceededError(f"count stopped at {result.count} after {result.nodes} nodes")
    return result.count


# --- torus -----------------------------------------------------------------

def _outward_count(tile: Tile) -> int:
    return sum(1 for m in tile.edges if m.outward)


def balance_feasible(tiles: TileSet, width: int, height: int) -> bool:
    """
    Whether tile counts can satisfy the torus balance: every edge has one
    outward side and cornered tiles fill a quarter of the cells.
    """
    cells = width * height
    if cells % 4:
        return False
    classes = {(tile.cornered, _outward_count(tile)) for tile in tiles}
    target = (cells, 2 * cells, cells // 4)
    reachable: Set[Tuple[int, int, int]] = {(0, 0, 0)}
    for cornered, outward in classes:
        grown = set(reachable)
        frontier = set(reachable)
        while frontier:
            step = set()
            for n, out, corners in frontier:
                state = (n + 1, out + outward, corners + int(cornered))
                if state[0] <= cells and state[1] <= 2 * cells and state[2] <= cells // 4 and state not in grown:
                    step.add(state)
            grown |= step
            frontier = step
        reachable = grown
    return target in reachable


def parity_result(width: int, height: int) -> Optional[SolveResult]:
    """NONE_BY_PARITY when a torus period is odd; cornered tiles need even periods."""
    if width % 2 or height % 2:
        return SolveResult(SolveStatus.NONE_BY_PARITY, reason="cornered tiles need even periods")
    return None


def torus_search(tiles: TileSet, width: int, height: int, budget: Optional[int] = None,
                 max_period: Optional[int] = None) -> SolveResult:
    """
    Look for a width x height periodic tiling.

    Returns:
        SAT with the witness, NONE, NONE_BY_PARITY or TIMEOUT
    """
    max_period = max_period or Config.TORUS_MAX_PERIOD
    if width > max_period or height > max_period:
        raise LevelLimitError(f"torus {width}x{height} exceeds the configured maximum period {max_period}")
    parity = parity_result(width, height)
    if parity is not None:
        return parity
    if not balance_feasible(tiles, width, height):
        logger.info(f"Torus {width}x{height} with {tiles.name}: no balanced tile counts")
        return SolveResult(SolveStatus.NONE, reason="no tile counts balance outward marks and cornered tiles")
    # any periodic tiling can be translated to put a cornered tile at the origin
    search = _Search(tiles, Region(width, height, Boundary.TORUS), budget or Config.SOLVER_NODE_BUDGET,
                     anchor_cornered=True)
    result = _collect(search, tiles, SolveMode.FIRST)
    if result.status == SolveStatus.UNSAT:
        result.status = SolveStatus.NONE
    return result
