"""
Substitution engine.
Expands a domino into level-n supertiles under a symbol stuv, deflates
supertiles, and runs the congruence, equivalence and periodicity checks.
"""
import hashlib
import logging
from typing import Dict, Iterable, Iterator, List, NamedTuple, Optional, Sequence, Set, Tuple

from models.domino import (
    FLIP_V, IDENTITY, K, POINT_GROUP, R90, DominoPatch, Matrix, PlacedDomino, axis_code, center2,
    compose, mat_mul, mat_vec, transpose
)
from models.symbol import SLOTS, Symbol, format_symbol
from utils.errors import LevelLimitError, NotDeterministicError, NotFullSymbolError, TilingError

logger = logging.getLogger(__name__)

DEFAULT_MAX_LEVEL = 8


class ChildSlot(NamedTuple):
    """Placement of one child inside a horizontal parent of frame I."""
    offset: Tuple[int, int]     # doubled centre offset, child units
    pose: Matrix                # code-0 frame


# Horizontal parent spans x in [-2, 2], y in [-1, 1] after doubling.
CHILD_FRAME_TABLE: Dict[str, ChildSlot] = {
    's': ChildSlot((-2, 1), IDENTITY),
    't': ChildSlot((-2, -1), K[3]),
    'u': ChildSlot((1, 0), R90),
    'v': ChildSlot((3, 0), mat_mul(R90, K[3])),
}


# --- choosers --------------------------------------------------------------

class SeededChooser:
    """Counter-based choice keyed by (seed, tree path, slot)."""

    def __init__(self, seed: int = 0):
        self.seed = seed

    def pick(self, path: str, slot: str, options: Sequence[int]) -> int:
        if len(options) == 1:
            return options[0]
        digest = hashlib.blake2b(f"{self.seed}|{path}|{slot}".encode(), digest_size=8).digest()
        return options[int.from_bytes(digest, 'big') % len(options)]


class SequenceChooser:
    """Takes digits from an explicit list, in expansion order, cycling."""

    def __init__(self, choices: Sequence[int]):
        if not choices:
            raise ValueError("choice sequence is empty")
        self.choices = list(choices)
        self._position = 0

    def pick(self, path: str, slot: str, options: Sequence[int]) -> int:
        if len(options) == 1:
            return options[0]
        digit = self.choices[self._position % len(self.choices)]
        self._position += 1
        if digit not in options:
            raise TilingError(f"choice {digit} not allowed in slot {slot} at {path or 'root'}; options {list(options)}")
        return digit


# --- expansion -------------------------------------------------------------

Node = Tuple[str, Matrix, Tuple[int, int]]


def _children(frame: Matrix, c2: Tuple[int, int], codes: Dict[str, int]):
    base = (2 * c2[0], 2 * c2[1])
    for slot in SLOTS:
        entry = CHILD_FRAME_TABLE[slot]
        child_frame = compose(frame, entry.pose, K[codes[slot]])
        offset = mat_vec(frame, entry.offset)
        yield slot, (base[0] + offset[0], base[1] + offset[1]), child_frame


def _grow(options: Dict[str, Sequence[int]], chooser, nodes: List[Node], level: int) -> List[Node]:
    for _ in range(level):
        next_nodes = []
        for path, frame, c2 in nodes:
            codes = {slot: chooser.pick(path, slot, options[slot]) for slot in SLOTS}
            for slot, child_c2, child_frame in _children(frame, c2, codes):
                next_nodes.append((path + slot, child_frame, child_c2))
        nodes = next_nodes
    return nodes


def _root(frame: Matrix) -> List[Node]:
    axis, _ = axis_code(frame)
    return [('', frame, center2(0, 0, axis))]


def _patch(nodes: Iterable[Node], level: int) -> DominoPatch:
    return DominoPatch.of((PlacedDomino.from_frame(c2, frame) for _, frame, c2 in nodes), level).normalized()


def _fixed_options(codes: Dict[str, int]) -> Dict[str, Sequence[int]]:
    return {slot: (code,) for slot, code in codes.items()}


def expand(symbol: Symbol, level: int, chooser=None, max_level: int = DEFAULT_MAX_LEVEL) -> DominoPatch:
    """
    Substitute a horizontal code-0 domino `level` times.

    Returns:
        Normalized DominoPatch with 4**level dominoes
    """
    if not symbol.is_full:
        raise NotFullSymbolError(f"{format_symbol(symbol)} is not full")
    if level < 0:
        raise LevelLimitError("level must be non-negative")
    if level > max_level:
        raise LevelLimitError(f"level {level} exceeds the configured maximum {max_level}")
    chooser = chooser or SeededChooser(0)
    options = {slot: sorted(digits) for slot, digits in zip(SLOTS, symbol.digits)}
    patch = _patch(_grow(options, chooser, _root(IDENTITY), level), level)
    logger.info(f"Expanded {format_symbol(symbol)} to level {level}: {len(patch)} dominoes")
    return patch


def _require_deterministic(symbol: Symbol):
    if not symbol.is_deterministic:
        raise NotDeterministicError(f"{format_symbol(symbol)} is not deterministic")
    return dict(zip(SLOTS, symbol.codes()))


def _supertile(codes: Dict[str, int], frame: Matrix, level: int) -> DominoPatch:
    return _patch(_grow(_fixed_options(codes), SeededChooser(0), _root(frame), level), level)


# Horizontal code-0 first, so a supertile deflates to the parent it was expanded from.
ROOT_ORDER: Tuple[Matrix, ...] = POINT_GROUP


# --- deflation -------------------------------------------------------------

class _Candidate(NamedTuple):
    frame: Matrix
    c2: Tuple[int, int]
    members: Tuple[PlacedDomino, ...]


def _parent_of(domino: PlacedDomino, slot: str, codes: Dict[str, int]) -> Optional[Tuple[Matrix, Tuple[int, int]]]:
    """Frame and centre of the parent that has `domino` as its `slot` child."""
    entry = CHILD_FRAME_TABLE[slot]
    # child frame is F . P . K_code
    frame = compose(domino.frame, K[codes[slot]], transpose(entry.pose))
    offset = mat_vec(frame, entry.offset)
    base = (domino.center2[0] - offset[0], domino.center2[1] - offset[1])
    if base[0] % 2 or base[1] % 2:
        return None
    return frame, (base[0] // 2, base[1] // 2)


def _candidates(patch: DominoPatch, codes: Dict[str, int]) -> List[_Candidate]:
    present = {(d.center2, d.frame): d for d in patch.dominoes}
    found = []
    for domino in patch.sorted():
        parent = _parent_of(domino, 's', codes)
        if parent is None:
            continue
        frame, parent_c2 = parent
        members = []
        for _, child_c2, child_frame in _children(frame, parent_c2, codes):
            member = present.get((child_c2, child_frame))
            if member is None:
                break
            members.append(member)
        else:
            found.append(_Candidate(frame, parent_c2, tuple(members)))
    return found


def _exact_covers(dominoes: List[PlacedDomino], candidates: List[_Candidate]) -> Iterator[List[_Candidate]]:
    """Every grouping of the dominoes into disjoint candidate parents."""
    by_domino: Dict[PlacedDomino, List[_Candidate]] = {d: [] for d in dominoes}
    for candidate in candidates:
        for member in candidate.members:
            by_domino[member].append(candidate)
    chosen: List[_Candidate] = []
    covered: Set[PlacedDomino] = set()

    def search(index: int):
        while index < len(dominoes) and dominoes[index] in covered:
            index += 1
        if index == len(dominoes):
            yield list(chosen)
            return
        for candidate in by_domino[dominoes[index]]:
            if any(m in covered for m in candidate.members):
                continue
            chosen.append(candidate)
            covered.update(candidate.members)
            yield from search(index + 1)
            chosen.pop()
            covered.difference_update(candidate.members)

    yield from search(0)


def deflate(patch: DominoPatch, symbol: Symbol) -> Optional[DominoPatch]:
    """
    Group the dominoes into parents under a deterministic symbol.

    A patch of 4**level dominoes is read as a whole supertile: it deflates
    only if re-expanding some root frame gives it back, and then to that
    root's level-1 supertile. Smaller fragments deflate to their first
    exact grouping into parents.

    Returns:
        The parent patch one level down, or None when no decomposition exists
    """
    codes = _require_deterministic(symbol)
    if patch.level <= 0 or not patch.dominoes or len(patch) % 4:
        return None
    if len(patch) == 4 ** patch.level:
        target = patch.normalized().dominoes
        for frame in ROOT_ORDER:
            if _supertile(codes, frame, patch.level).dominoes == target:
                return _supertile(codes, frame, patch.level - 1)
        logger.info(f"{patch!r} is not a supertile of {format_symbol(symbol)}")
        return None
    cover = next(_exact_covers(patch.sorted(), _candidates(patch, codes)), None)
    if cover is None:
        logger.info(f"No decomposition of {patch!r} under {format_symbol(symbol)}")
        return None
    parents = (PlacedDomino.from_frame(c.c2, c.frame) for c in cover)
    return DominoPatch.of(parents, patch.level - 1).normalized()


# --- parses and congruence -------------------------------------------------

class Parse(NamedTuple):
    symbol: str
    part: str       # 'whole' or 'half'
    level: int
    root: str       # axis and code of the parent domino, e.g. 'H0'


def _level_for(count: int) -> Optional[int]:
    level, size = 0, 1
    while size < count:
        level, size = level + 1, size * 4
    return level if size == count else None


def _root_name(frame: Matrix) -> str:
    axis, code = axis_code(frame)
    return f'{axis}{code}'


def square_halves(patch: DominoPatch) -> Tuple[DominoPatch, DominoPatch]:
    """Split a horizontal supertile into its left and right squares."""
    _, _, width, _ = patch.bbox
    half = width // 2
    left = DominoPatch.of((d for d in patch.dominoes if d.x < half), patch.level)
    right = DominoPatch.of((d for d in patch.dominoes if d.x >= half), patch.level)
    return left.normalized(), right.normalized()


HALVES = (('s', 't'), ('u', 'v'))


def _whole_parses(name: str, codes: Dict[str, int], target, level: int) -> List[Parse]:
    return [
        Parse(name, 'whole', level, _root_name(frame))
        for frame in POINT_GROUP
        if _supertile(codes, frame, level).dominoes == target
    ]


def _half_parses(name: str, codes: Dict[str, int], target, level: int) -> List[Parse]:
    """Parent frames whose s,t or u,v children grow into the target. Parents
    that only differ in the unused children give the same parse."""
    options = _fixed_options(codes)
    chooser = SeededChooser(0)
    seen = set()
    parses = []
    for frame in POINT_GROUP:
        axis, _ = axis_code(frame)
        children = {slot: (slot, f, c2) for slot, c2, f in _children(frame, center2(0, 0, axis), codes)}
        for pair in HALVES:
            nodes = [children[slot] for slot in pair]
            if _patch(_grow(options, chooser, nodes, level - 1), level).dominoes != target:
                continue
            key = _patch(nodes, level - 1).dominoes
            if key in seen:
                continue
            seen.add(key)
            parses.append(Parse(name, 'half', level, _root_name(frame)))
    return parses


def decompositions(patch: DominoPatch, symbols: Iterable[Symbol]) -> List[Parse]:
    """
    Framed hierarchies over an unframed patch: ways to read it as a whole
    level-k supertile or as one square half of a level-k supertile, under
    each deterministic symbol and any parent frame.
    """
    target = patch.normalized().dominoes
    count = len(patch)
    parses = []
    for symbol in sorted(symbols, key=format_symbol):
        codes = _require_deterministic(symbol)
        name = format_symbol(symbol)
        if count < 4:
            continue
        whole_level = _level_for(count)
        if whole_level is not None:
            parses.extend(_whole_parses(name, codes, target, whole_level))
        half_level = _level_for(2 * count)
        if half_level is not None:
            parses.extend(_half_parses(name, codes, target, half_level))
    return parses


def flip_v(patch: DominoPatch) -> DominoPatch:
    """Reflect y -> -y: horizontal codes change by 2, vertical codes by 1."""
    return patch.transformed(FLIP_V)


def congruent(first: DominoPatch, second: DominoPatch, transforms: Iterable[str] = ('translate',)) -> bool:
    """True iff an allowed combination of translation, point-group element
    and uniform code relabeling maps first onto second."""
    allowed = set(transforms)
    unknown = allowed - {'translate', 'pointgroup', 'relabel'}
    if unknown:
        raise TilingError(f"unknown transforms: {', '.join(sorted(unknown))}")
    target = second.normalized().dominoes if 'translate' in allowed else second.dominoes
    elements = POINT_GROUP if 'pointgroup' in allowed else (IDENTITY,)
    shifts = range(4) if 'relabel' in allowed else (0,)
    for g in elements:
        moved = first.transformed(g) if g != IDENTITY else first
        if 'translate' in allowed:
            moved = moved.normalized()
        for k in shifts:
            if moved.relabeled(k).dominoes == target:
                return True
    return False


def mirror_law_check(symbol: Symbol, level: int) -> bool:
    """The flipped, code-shifted supertile of S is the supertile of its partner."""
    from services.symbol_service import partner
    _require_deterministic(symbol)
    image = flip_v(expand(symbol, level)).relabeled(2)
    return congruent(image, expand(partner(symbol), level))


def hier_equiv_check(first: Symbol, second: Symbol, level: int) -> bool:
    """True iff the level-n supertiles coincide as framed patches."""
    _require_deterministic(first)
    _require_deterministic(second)
    if level < 2:
        raise LevelLimitError("hierarchy comparison needs level >= 2")
    return expand(first, level).dominoes == expand(second, level).dominoes


def periodicity_scan(patch: DominoPatch) -> Set[Tuple[int, int]]:
    """
    Nonzero translations shorter than half the bounding box that carry every
    domino landing inside the box onto a domino of the patch.
    """
    patch = patch.normalized()
    _, _, width, height = patch.bbox
    present = {(d.x, d.y, d.axis): d.code for d in patch.dominoes}
    periods = set()
    for dx in range(-((width - 1) // 2), (width - 1) // 2 + 1):
        for dy in range(-((height - 1) // 2), (height - 1) // 2 + 1):
            if dx == 0 and dy == 0:
                continue
            if _is_period(patch, present, dx, dy, width, height):
                periods.add((dx, dy))
    return periods


def _is_period(patch, present, dx, dy, width, height) -> bool:
    landed = 0
    for d in patch.dominoes:
        moved = PlacedDomino(d.x + dx, d.y + dy, d.axis, d.code)
        if not all(0 <= cx < width and 0 <= cy < height for cx, cy in moved.cells):
            continue
        if present.get(moved.shape) != d.code:
            return False
        landed += 1
    return landed > 0
