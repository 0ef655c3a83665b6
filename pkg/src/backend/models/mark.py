"""
Edge markings.

A mark carries four channels: direction a (+1 outward, -1 inward), sidedness
b (+1, 0, -1), structure digit c (0-3) and framing code d (0-3, or None for
marks of the T1 context where the framing channel is suppressed).
Framing codes form Z2 x Z2 under nim addition.
"""
from dataclasses import dataclass
from typing import Optional, Tuple

from utils.errors import ContextError, MarkParseError

FRAMING_CODES = (0, 1, 2, 3)

_SIGNS = {'+': 1, '-': -1}
_SIGN_TEXT = {1: '+', -1: '-', 0: '0'}


def nim_add(x: int, y: int) -> int:
    """Carry-free addition of two framing codes."""
    return x ^ y


def frame_vars(d: int) -> Tuple[int, int, int]:
    """
    Generic framing variables derived from d.

    Returns:
        (b, q, p) with b = d+1, q = d+2, p = d+3 under nim addition
    """
    return nim_add(d, 1), nim_add(d, 2), nim_add(d, 3)


@dataclass(frozen=True)
class EdgeMark:
    """A four-channel edge marking (a, b, c, d)."""
    a: int
    b: int = 0
    c: int = 0
    d: Optional[int] = None

    def __post_init__(self):
        if self.a not in (1, -1):
            raise ValueError(f"direction must be +1 or -1, got {self.a}")
        if self.b not in (1, 0, -1):
            raise ValueError(f"side must be +1, 0 or -1, got {self.b}")
        if self.c not in FRAMING_CODES:
            raise ValueError(f"structure digit must be 0-3, got {self.c}")
        if self.d is not None and self.d not in FRAMING_CODES:
            raise ValueError(f"framing code must be 0-3, got {self.d}")

    @property
    def is_plain(self) -> bool:
        return self.b == 0 and self.c == 0 and self.d in (0, None)

    @property
    def outward(self) -> bool:
        return self.a == 1

    @property
    def context(self) -> str:
        return 'T1' if self.d is None else 'T2'

    def sort_key(self) -> Tuple[int, int, int, int]:
        return (self.a, self.b, self.c, -1 if self.d is None else self.d)

    def to_dict(self):
        return {'a': self.a, 'b': self.b, 'c': self.c, 'd': self.d, 'text': format_mark(self)}

    def __repr__(self):
        return f'<EdgeMark ({format_mark(self)})>'


def plain(a: int, context: str = 'T2') -> EdgeMark:
    return EdgeMark(a, 0, 0, 0 if context == 'T2' else None)


def mark_matches(m: EdgeMark, other: EdgeMark) -> bool:
    """(ab) channels cancel and (cd) channels agree."""
    if (m.d is None) != (other.d is None):
        raise ContextError(f"cannot compare marks from different contexts: {m!r}, {other!r}")
    return m.a == -other.a and m.b == -other.b and m.c == other.c and m.d == other.d


def mark_reflect(m: EdgeMark) -> EdgeMark:
    return EdgeMark(m.a, -m.b, m.c, m.d)


def mark_complement(m: EdgeMark) -> EdgeMark:
    """The unique mark that matches m."""
    return EdgeMark(-m.a, -m.b, m.c, m.d)


def mark_shift(m: EdgeMark, k: int) -> EdgeMark:
    """Add k to the framing channel; the plain marks are fixed."""
    if m.d is None:
        raise ContextError(f"framing shift needs a T2-context mark, got {m!r}")
    if m.is_plain:
        return m
    return EdgeMark(m.a, m.b, m.c, nim_add(m.d, k))


def format_mark(m: EdgeMark) -> str:
    """
    ASCII spelling: '+'/'-' for the plain marks (+000)/(-000), otherwise
    sign, side, digit and optional framing code, e.g. '+-31', '+-3'.
    """
    if m.b == 0 and m.c == 0 and m.d == 0:
        return _SIGN_TEXT[m.a]
    text = f"{_SIGN_TEXT[m.a]}{_SIGN_TEXT[m.b]}{m.c}"
    if m.d is not None:
        text += str(m.d)
    return text


def parse_mark(text: str, context: Optional[str] = None) -> EdgeMark:
    """
    Parse the ASCII mark grammar.

    A bare '+' or '-' reads as d = 0 unless context is 'T1'.
    """
    if not isinstance(text, str) or not text:
        raise MarkParseError("empty mark", str(text), 0)
    text = text.strip().replace('−', '-')
    if text[0] not in _SIGNS:
        raise MarkParseError("expected sign '+' or '-'", text, 0)
    a = _SIGNS[text[0]]
    if len(text) == 1:
        return EdgeMark(a, 0, 0, None if context == 'T1' else 0)
    side_char = text[1]
    if side_char == '0':
        b = 0
    elif side_char in _SIGNS:
        b = _SIGNS[side_char]
    else:
        raise MarkParseError("expected side '0', '+' or '-'", text, 1)
    if len(text) < 3 or text[2] not in '0123':
        raise MarkParseError("expected structure digit 0-3", text, 2)
    c = int(text[2])
    d = None
    if len(text) >= 4:
        if text[3] not in '0123':
            raise MarkParseError("expected framing digit 0-3", text, 3)
        d = int(text[3])
    if len(text) > 4:
        raise MarkParseError("trailing characters", text, 4)
    if context == 'T2' and d is None:
        raise MarkParseError("T2-context mark needs a framing digit", text, 3)
    if context == 'T1' and d is not None:
        raise MarkParseError("T1-context mark carries no framing digit", text, 3)
    return EdgeMark(a, b, c, d)
