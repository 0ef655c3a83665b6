"""
Placed dominoes and domino patches.

A domino's frame is a 2x2 signed permutation matrix. Horizontal dominoes
have frame K_c and vertical ones R90.K_c, where c is the framing code and
K_0 = I, K_1 = diag(-1, 1), K_2 = diag(1, -1), K_3 = -I. Centres are kept
in doubled coordinates so they stay integral.
"""
from dataclasses import dataclass
from typing import FrozenSet, Iterable, List, Tuple

Matrix = Tuple[Tuple[int, int], Tuple[int, int]]
Vec = Tuple[int, int]

IDENTITY: Matrix = ((1, 0), (0, 1))
R90: Matrix = ((0, -1), (1, 0))
K: Tuple[Matrix, ...] = (
    ((1, 0), (0, 1)),
    ((-1, 0), (0, 1)),
    ((1, 0), (0, -1)),
    ((-1, 0), (0, -1)),
)
FLIP_V: Matrix = K[2]

HORIZONTAL = 'H'
VERTICAL = 'V'


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    return (
        (a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]),
        (a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]),
    )


def mat_vec(a: Matrix, v: Vec) -> Vec:
    return (a[0][0] * v[0] + a[0][1] * v[1], a[1][0] * v[0] + a[1][1] * v[1])


def transpose(a: Matrix) -> Matrix:
    return ((a[0][0], a[1][0]), (a[0][1], a[1][1]))


def compose(*matrices: Matrix) -> Matrix:
    result = IDENTITY
    for m in matrices:
        result = mat_mul(result, m)
    return result


POINT_GROUP: Tuple[Matrix, ...] = tuple(K) + tuple(mat_mul(R90, k) for k in K)


def frame_of(axis: str, code: int) -> Matrix:
    return K[code] if axis == HORIZONTAL else mat_mul(R90, K[code])


def axis_code(frame: Matrix) -> Tuple[str, int]:
    """Inverse of frame_of."""
    if frame[1][0] == 0:
        return HORIZONTAL, K.index(frame)
    return VERTICAL, K.index(mat_mul(transpose(R90), frame))


def center2(x: int, y: int, axis: str) -> Vec:
    if axis == HORIZONTAL:
        return 2 * x + 2, 2 * y + 1
    return 2 * x + 1, 2 * y + 2


def anchor_of(c2: Vec, axis: str) -> Vec:
    if axis == HORIZONTAL:
        return (c2[0] - 2) // 2, (c2[1] - 1) // 2
    return (c2[0] - 1) // 2, (c2[1] - 2) // 2


@dataclass(frozen=True, order=True)
class PlacedDomino:
    """A 2x1 domino anchored at its lower-left cell."""
    x: int
    y: int
    axis: str
    code: int

    @property
    def frame(self) -> Matrix:
        return frame_of(self.axis, self.code)

    @property
    def center2(self) -> Vec:
        return center2(self.x, self.y, self.axis)

    @property
    def cells(self) -> Tuple[Vec, Vec]:
        if self.axis == HORIZONTAL:
            return (self.x, self.y), (self.x + 1, self.y)
        return (self.x, self.y), (self.x, self.y + 1)

    @property
    def shape(self) -> Tuple[int, int, str]:
        return self.x, self.y, self.axis

    @classmethod
    def from_frame(cls, c2: Vec, frame: Matrix) -> 'PlacedDomino':
        axis, code = axis_code(frame)
        x, y = anchor_of(c2, axis)
        return cls(x, y, axis, code)

    def to_dict(self):
        return {'x': self.x, 'y': self.y, 'axis': self.axis, 'code': self.code}


@dataclass(frozen=True)
class DominoPatch:
    dominoes: FrozenSet[PlacedDomino]
    level: int = 0

    @classmethod
    def of(cls, dominoes: Iterable[PlacedDomino], level: int = 0) -> 'DominoPatch':
        return cls(frozenset(dominoes), level)

    def sorted(self) -> List[PlacedDomino]:
        return sorted(self.dominoes, key=lambda d: (d.y, d.x, d.axis, d.code))

    @property
    def bbox(self) -> Tuple[int, int, int, int]:
        """(min_x, min_y, width, height) in cells."""
        if not self.dominoes:
            return 0, 0, 0, 0
        cells = [cell for d in self.dominoes for cell in d.cells]
        xs = [c[0] for c in cells]
        ys = [c[1] for c in cells]
        return min(xs), min(ys), max(xs) - min(xs) + 1, max(ys) - min(ys) + 1

    def shapes(self) -> FrozenSet[Tuple[int, int, str]]:
        """Geometry without framing codes."""
        return frozenset(d.shape for d in self.dominoes)

    def translated(self, dx: int, dy: int) -> 'DominoPatch':
        return DominoPatch.of((PlacedDomino(d.x + dx, d.y + dy, d.axis, d.code) for d in self.dominoes), self.level)

    def normalized(self) -> 'DominoPatch':
        min_x, min_y, _, _ = self.bbox
        if min_x == 0 and min_y == 0:
            return self
        return self.translated(-min_x, -min_y)

    def relabeled(self, k: int) -> 'DominoPatch':
        return DominoPatch.of((PlacedDomino(d.x, d.y, d.axis, d.code ^ k) for d in self.dominoes), self.level)

    def transformed(self, g: Matrix) -> 'DominoPatch':
        """Apply a point-group element about the origin, then normalize."""
        moved = (PlacedDomino.from_frame(mat_vec(g, d.center2), mat_mul(g, d.frame)) for d in self.dominoes)
        return DominoPatch.of(moved, self.level).normalized()

    def __len__(self):
        return len(self.dominoes)

    def to_dict(self):
        _, _, width, height = self.bbox
        return {
            'level': self.level,
            'width': width,
            'height': height,
            'dominoes': [d.to_dict() for d in self.sorted()],
        }

    def __repr__(self):
        return f'<DominoPatch level={self.level} dominoes={len(self.dominoes)}>'
