"""
Square tiles with four marked edges, their point-group images, and tile sets.

Edges are ordered N, E, S, W. A pose is an integer 0-7: poses 0-3 are
clockwise quarter turns, poses 4-7 a left-right mirror followed by the same
turns. Mirroring swaps E and W and reflects every mark.
"""
import enum
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from models.mark import EdgeMark, format_mark, mark_reflect

SIDES = ('N', 'E', 'S', 'W')
POSES = tuple(range(8))

Edges = Tuple[EdgeMark, EdgeMark, EdgeMark, EdgeMark]


class TileRole(str, enum.Enum):
    OUTWARD = 'OUTWARD'
    CROSSING = 'CROSSING'


def rotate_edges(edges: Edges, turns: int = 1) -> Edges:
    """Quarter turns clockwise: (N, E, S, W) -> (W, N, E, S)."""
    for _ in range(turns % 4):
        n, e, s, w = edges
        edges = (w, n, e, s)
    return edges


def mirror_edges(edges: Edges) -> Edges:
    n, e, s, w = edges
    return (mark_reflect(n), mark_reflect(w), mark_reflect(s), mark_reflect(e))


def pose_edges(edges: Edges, pose: int) -> Edges:
    if pose >= 4:
        edges = mirror_edges(edges)
    return rotate_edges(edges, pose % 4)


def _edges_key(edges: Edges):
    return tuple(m.sort_key() for m in edges)


@dataclass(frozen=True)
class Placement:
    """A lattice translation plus a point-group element (pose)."""
    x: int
    y: int
    pose: int = 0

    def to_dict(self):
        return {'x': self.x, 'y': self.y, 'pose': self.pose}


@dataclass(frozen=True, eq=False)
class Tile:
    """
    A cornered or uncornered unit square. Equality and hashing are up to
    congruence under the eight point-group images.
    """
    cornered: bool
    edges: Edges
    name: str = ''
    _key: tuple = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if len(self.edges) != 4:
            raise ValueError("a tile has exactly four edges")
        contexts = {m.context for m in self.edges}
        if len(contexts) != 1:
            raise ValueError("tile mixes T1 and T2 marks")
        key = (self.cornered, min(_edges_key(pose_edges(self.edges, p)) for p in POSES))
        object.__setattr__(self, '_key', key)

    @property
    def key(self):
        return self._key

    @property
    def context(self) -> str:
        return self.edges[0].context

    @property
    def role(self) -> TileRole:
        if all(m.outward for m in self.edges):
            return TileRole.OUTWARD
        return TileRole.CROSSING

    def edge(self, side: str) -> EdgeMark:
        return self.edges[SIDES.index(side)]

    def posed(self, pose: int) -> Edges:
        return pose_edges(self.edges, pose)

    def __eq__(self, other):
        if not isinstance(other, Tile):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def to_dict(self):
        return {
            'name': self.name,
            'cornered': self.cornered,
            'role': self.role.value,
            'edges': {side: format_mark(m) for side, m in zip(SIDES, self.edges)},
        }

    def __repr__(self):
        return f'<Tile {self.name or "?"}>'


def placements(tile: Tile) -> List[Tuple[int, Edges]]:
    """Distinct point-group images of a tile, first pose kept per image."""
    seen = set()
    images = []
    for pose in POSES:
        edges = tile.posed(pose)
        key = _edges_key(edges)
        if key in seen:
            continue
        seen.add(key)
        images.append((pose, edges))
    return images


@dataclass(frozen=True)
class TileSet:
    name: str
    members: FrozenSet[Tile]

    @classmethod
    def of(cls, name: str, tiles: Iterable[Tile]) -> 'TileSet':
        return cls(name, frozenset(tiles))

    @property
    def context(self) -> Optional[str]:
        contexts = {t.context for t in self.members}
        return contexts.pop() if len(contexts) == 1 else None

    def names(self) -> List[str]:
        return sorted(t.name for t in self.members)

    def by_name(self) -> Dict[str, Tile]:
        return {t.name: t for t in self.members}

    def sorted_tiles(self) -> List[Tile]:
        from services.catalogue_service import tile_order_key
        return sorted(self.members, key=tile_order_key)

    def union(self, *others: 'TileSet', name: Optional[str] = None) -> 'TileSet':
        members = set(self.members)
        for other in others:
            members |= other.members
        return TileSet(name or self.name, frozenset(members))

    def difference(self, other: 'TileSet', name: Optional[str] = None) -> 'TileSet':
        return TileSet(name or self.name, self.members - other.members)

    def issubset(self, other: 'TileSet') -> bool:
        return self.members <= other.members

    def __len__(self):
        return len(self.members)

    def __contains__(self, tile):
        return tile in self.members

    def __iter__(self):
        return iter(self.members)

    def to_dict(self):
        return {
            'name': self.name,
            'context': self.context,
            'size': len(self.members),
            'tiles': [t.to_dict() for t in self.sorted_tiles()],
        }

    def __repr__(self):
        return f'<TileSet {self.name} ({len(self.members)} tiles)>'
