"""
Square-lattice regions and marked patches.
Cells are (x, y) with y growing downward; row 0 is the top row.
"""
import enum
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from models.mark import EdgeMark
from models.tile import Tile

Cell = Tuple[int, int]


class Boundary(str, enum.Enum):
    FREE = 'FREE'
    FIXED = 'FIXED'
    TORUS = 'TORUS'


class SolveMode(str, enum.Enum):
    FIRST = 'FIRST'
    COUNT = 'COUNT'
    ALL = 'ALL'


class SolveStatus(str, enum.Enum):
    SAT = 'SAT'
    UNSAT = 'UNSAT'
    TIMEOUT = 'TIMEOUT'
    NONE = 'NONE'
    NONE_BY_PARITY = 'NONE_BY_PARITY'


@dataclass(frozen=True)
class Region:
    width: int
    height: int
    boundary: Boundary = Boundary.FREE
    # (x, y, side) -> mark the boundary edge of that cell must carry
    fixed: Tuple[Tuple[Tuple[int, int, str], EdgeMark], ...] = ()

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise ValueError("region needs at least one cell")
        if self.boundary == Boundary.TORUS and (self.width % 2 or self.height % 2):
            raise ValueError("a torus needs even width and height")

    @property
    def cells(self) -> List[Cell]:
        return [(x, y) for y in range(self.height) for x in range(self.width)]

    def fixed_marks(self) -> Dict[Tuple[int, int, str], EdgeMark]:
        return dict(self.fixed)

    def to_dict(self):
        return {'width': self.width, 'height': self.height, 'boundary': self.boundary.value}


@dataclass
class MarkedPatch:
    cells: Dict[Cell, Tuple[Tile, int]] = field(default_factory=dict)

    def edges_at(self, cell: Cell):
        tile, pose = self.cells[cell]
        return tile.posed(pose)

    def sorted_cells(self) -> List[Tuple[Cell, Tile, int]]:
        return [(cell, *self.cells[cell]) for cell in sorted(self.cells, key=lambda c: (c[1], c[0]))]

    @property
    def size(self) -> Tuple[int, int]:
        if not self.cells:
            return 0, 0
        xs = [c[0] for c in self.cells]
        ys = [c[1] for c in self.cells]
        return max(xs) - min(xs) + 1, max(ys) - min(ys) + 1

    def tile_names(self) -> List[str]:
        return sorted({tile.name for tile, _ in self.cells.values()})

    def to_dict(self):
        return {'cells': [{'x': x, 'y': y, 'tile': tile.name, 'pose': pose}
                          for (x, y), tile, pose in self.sorted_cells()]}

    def __len__(self):
        return len(self.cells)

    def __repr__(self):
        width, height = self.size
        return f'<MarkedPatch {width}x{height} tiles={len(self.cells)}>'


@dataclass(frozen=True)
class Violation:
    x: int
    y: int
    kind: str       # MEMBERSHIP, EDGE or VERTEX
    detail: str = ''

    def to_dict(self):
        return {'x': self.x, 'y': self.y, 'kind': self.kind, 'detail': self.detail}


@dataclass
class SolveResult:
    status: SolveStatus
    tilings: List[MarkedPatch] = field(default_factory=list)
    count: int = 0
    nodes: int = 0
    reason: Optional[str] = None

    @property
    def witness(self) -> Optional[MarkedPatch]:
        return self.tilings[0] if self.tilings else None

    def to_dict(self):
        return {
            'status': self.status.value,
            'count': self.count,
            'nodes': self.nodes,
            'reason': self.reason,
            'tilings': [p.to_dict() for p in self.tilings],
        }
