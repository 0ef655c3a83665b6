"""
Rendering service.
SVG and ASCII views of domino patches and marked patches. Output is a pure
function of the patch and the render settings.
"""
import xml.etree.ElementTree as ET
from dataclasses import dataclass
from typing import List, Tuple, Union

from models.domino import HORIZONTAL, VERTICAL, DominoPatch, PlacedDomino
from models.mark import EdgeMark
from models.patch import MarkedPatch
from utils.errors import ParseError

SVG_NS = 'http://www.w3.org/2000/svg'

DEFAULT_PALETTE = ('#1f1f1f', '#f2f2f2', '#c0392b', '#2e86c1')
CHANNEL_COLORS = ('#7f8c8d', '#27ae60', '#8e44ad', '#d35400')


@dataclass(frozen=True)
class RenderSpec:
    palette: Tuple[str, str, str, str] = DEFAULT_PALETTE
    scale: int = 20
    show_codes: bool = False
    show_marks: bool = True

    def __post_init__(self):
        if len(self.palette) != 4:
            raise ValueError("palette needs one colour per framing code")

    def swapped(self, k: int) -> 'RenderSpec':
        """Palette with code c painted as code c + k."""
        return RenderSpec(tuple(self.palette[c ^ k] for c in range(4)), self.scale, self.show_codes, self.show_marks)


def _document(width: int, height: int, scale: int) -> ET.Element:
    return ET.Element('svg', {
        'xmlns': SVG_NS,
        'width': str(width * scale),
        'height': str(height * scale),
        'viewBox': f"0 0 {width * scale} {height * scale}",
    })


def _serialize(root: ET.Element) -> str:
    return ET.tostring(root, encoding='unicode')


def render_domino_svg(patch: DominoPatch, spec: RenderSpec = RenderSpec()) -> str:
    patch = patch.normalized()
    _, _, width, height = patch.bbox
    scale = spec.scale
    root = _document(width, height, scale)
    group = ET.SubElement(root, 'g', {'class': 'dominoes'})
    for domino in patch.sorted():
        w, h = (2, 1) if domino.axis == HORIZONTAL else (1, 2)
        ET.SubElement(group, 'rect', {
            'x': str(domino.x * scale),
            'y': str(domino.y * scale),
            'width': str(w * scale),
            'height': str(h * scale),
            'fill': spec.palette[domino.code],
            'stroke': '#000000',
            'stroke-width': '1',
        })
        if spec.show_codes:
            label = ET.SubElement(group, 'text', {
                'x': str((domino.x + w / 2) * scale),
                'y': str((domino.y + h / 2) * scale),
                'font-size': str(scale // 2),
                'text-anchor': 'middle',
            })
            label.text = str(domino.code)
    return _serialize(root)


# Edge midpoints and outward normals of a unit square, y downward.
_EDGE_GEOMETRY = {
    0: ((0.5, 0.0), (0, -1)),
    1: ((1.0, 0.5), (1, 0)),
    2: ((0.5, 1.0), (0, 1)),
    3: ((0.0, 0.5), (-1, 0)),
}


def _mark_glyph(group: ET.Element, x: int, y: int, side: int, mark: EdgeMark, scale: int):
    """Triangle pointing across the edge in the mark's direction, offset by its side, coloured by its digit."""
    (mx, my), (nx, ny) = _EDGE_GEOMETRY[side]
    tx, ty = -ny, nx
    cx, cy = x + mx + tx * 0.15 * mark.b, y + my + ty * 0.15 * mark.b
    inner = (cx - nx * 0.22, cy - ny * 0.22)
    outer = (cx - nx * 0.04, cy - ny * 0.04)
    base, apex = (inner, outer) if mark.outward else (outer, inner)
    points = [
        (base[0] - tx * 0.12, base[1] - ty * 0.12),
        (base[0] + tx * 0.12, base[1] + ty * 0.12),
        apex,
    ]
    ET.SubElement(group, 'polygon', {
        'points': ' '.join(f"{px * scale:.2f},{py * scale:.2f}" for px, py in points),
        'fill': CHANNEL_COLORS[mark.c],
        'data-d': '' if mark.d is None else str(mark.d),
    })


def render_marked_svg(patch: MarkedPatch, spec: RenderSpec = RenderSpec()) -> str:
    width, height = patch.size
    scale = spec.scale
    root = _document(width, height, scale)
    group = ET.SubElement(root, 'g', {'class': 'tiles'})
    if not patch.cells:
        return _serialize(root)
    min_x = min(c[0] for c in patch.cells)
    min_y = min(c[1] for c in patch.cells)
    for (x, y), tile, pose in patch.sorted_cells():
        x, y = x - min_x, y - min_y
        cell = ET.SubElement(group, 'g', {'data-tile': tile.name, 'data-pose': str(pose)})
        ET.SubElement(cell, 'rect', {
            'x': str(x * scale), 'y': str(y * scale), 'width': str(scale), 'height': str(scale),
            'fill': '#ffffff', 'stroke': '#555555', 'stroke-width': '1',
        })
        if spec.show_marks:
            for side, mark in enumerate(tile.posed(pose)):
                _mark_glyph(cell, x, y, side, mark, scale)
        if tile.cornered:
            ET.SubElement(cell, 'circle', {
                'cx': str(x * scale + scale * 0.2), 'cy': str(y * scale + scale * 0.2),
                'r': str(scale * 0.08), 'fill': '#000000',
            })
    return _serialize(root)


# --- ASCII -----------------------------------------------------------------

# Horizontal dominoes show their code as a digit, vertical ones as a letter.
VERTICAL_GLYPHS = 'abcd'
EMPTY_GLYPH = '.'


def _domino_ascii(patch: DominoPatch) -> str:
    patch = patch.normalized()
    _, _, width, height = patch.bbox
    grid = [[EMPTY_GLYPH] * width for _ in range(height)]
    for domino in patch.dominoes:
        glyph = str(domino.code) if domino.axis == HORIZONTAL else VERTICAL_GLYPHS[domino.code]
        for x, y in domino.cells:
            grid[y][x] = glyph
    return '\n'.join(''.join(row) for row in grid)


def _mark_char(mark: EdgeMark) -> str:
    if mark.b == 0 and mark.c == 0:
        return '+' if mark.outward else '-'
    return str(mark.c)


def _marked_ascii(patch: MarkedPatch) -> str:
    if not patch.cells:
        return ''
    width, height = patch.size
    min_x = min(c[0] for c in patch.cells)
    min_y = min(c[1] for c in patch.cells)
    grid = [[' '] * (3 * width) for _ in range(3 * height)]
    for (x, y), tile, pose in patch.sorted_cells():
        north, east, south, west = tile.posed(pose)
        gx, gy = 3 * (x - min_x), 3 * (y - min_y)
        grid[gy][gx + 1] = _mark_char(north)
        grid[gy + 1][gx + 2] = _mark_char(east)
        grid[gy + 2][gx + 1] = _mark_char(south)
        grid[gy + 1][gx] = _mark_char(west)
        grid[gy + 1][gx + 1] = '*' if tile.cornered else 'o'
    return '\n'.join(''.join(row).rstrip() for row in grid)


def render_ascii(patch: Union[DominoPatch, MarkedPatch]) -> str:
    """
    Domino patches: one character per cell, '.' where no domino lies.
    Marked patches: a 3x3 glyph per tile.
    """
    if isinstance(patch, DominoPatch):
        return _domino_ascii(patch)
    return _marked_ascii(patch)


def _offset(rows: List[str], row: int, col: int) -> int:
    return sum(len(r) + 1 for r in rows[:row]) + col


def parse_ascii(text: str, level: int = 0) -> DominoPatch:
    """Inverse of render_ascii for domino patches."""
    rows = text.split('\n')
    glyphs = set('0123') | set(VERTICAL_GLYPHS) | {EMPTY_GLYPH}
    for row_index, row in enumerate(rows):
        for col_index, ch in enumerate(row):
            if ch not in glyphs:
                raise ParseError(f"unexpected {ch!r} in domino grid", text, _offset(rows, row_index, col_index))

    def at(x, y):
        if 0 <= y < len(rows) and 0 <= x < len(rows[y]):
            return rows[y][x]
        return EMPTY_GLYPH

    dominoes: List[PlacedDomino] = []
    seen = set()
    for y, row in enumerate(rows):
        for x, ch in enumerate(row):
            if ch == EMPTY_GLYPH or (x, y) in seen:
                continue
            if ch in VERTICAL_GLYPHS:
                axis, partner, code = VERTICAL, (x, y + 1), VERTICAL_GLYPHS.index(ch)
            else:
                axis, partner, code = HORIZONTAL, (x + 1, y), int(ch)
            if at(*partner) != ch or partner in seen:
                raise ParseError(f"cell ({x}, {y}) belongs to no domino", text, _offset(rows, y, x))
            dominoes.append(PlacedDomino(x, y, axis, code))
            seen.update({(x, y), partner})
    return DominoPatch.of(dominoes, level)
