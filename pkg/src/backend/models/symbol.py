"""
Substitution symbols stuv: four subsets of framing codes, one per child slot.
"""
import enum
from dataclasses import dataclass
from typing import FrozenSet, Iterable, Tuple

from utils.errors import SymbolParseError

SLOTS = ('s', 't', 'u', 'v')
ALL_CODES = frozenset(range(4))


class SymbolClass(str, enum.Enum):
    FULL = 'FULL'
    DETERMINISTIC = 'DETERMINISTIC'
    ATOMIC = 'ATOMIC'
    PARTIAL = 'PARTIAL'


@dataclass(frozen=True)
class Symbol:
    s: FrozenSet[int]
    t: FrozenSet[int]
    u: FrozenSet[int]
    v: FrozenSet[int]

    @classmethod
    def of(cls, *digits: Iterable[int]) -> 'Symbol':
        if len(digits) != 4:
            raise ValueError("a symbol has four digits")
        return cls(*(frozenset(d) for d in digits))

    @classmethod
    def deterministic(cls, s: int, t: int, u: int, v: int) -> 'Symbol':
        return cls.of({s}, {t}, {u}, {v})

    @property
    def digits(self) -> Tuple[FrozenSet[int], ...]:
        return (self.s, self.t, self.u, self.v)

    def digit(self, slot: str) -> FrozenSet[int]:
        return self.digits[SLOTS.index(slot)]

    @property
    def is_full(self) -> bool:
        return all(self.digits)

    @property
    def is_deterministic(self) -> bool:
        return all(len(d) == 1 for d in self.digits)

    @property
    def is_atomic(self) -> bool:
        sizes = sorted(len(d) for d in self.digits)
        return sizes == [0, 0, 0, 1]

    def codes(self) -> Tuple[int, ...]:
        """Digits of a deterministic symbol as plain integers."""
        return tuple(next(iter(d)) for d in self.digits)

    def __str__(self):
        return format_symbol(self)

    def __repr__(self):
        return f'<Symbol {format_symbol(self)}>'

    def to_dict(self):
        return {'symbol': format_symbol(self), **{slot: sorted(d) for slot, d in zip(SLOTS, self.digits)}}


def _format_field(digits: FrozenSet[int]) -> str:
    if not digits:
        return '.'
    if digits == ALL_CODES:
        return '*'
    if len(digits) == 1:
        return str(next(iter(digits)))
    return '(' + ''.join(str(d) for d in sorted(digits)) + ')'


def format_symbol(symbol: Symbol) -> str:
    return ''.join(_format_field(d) for d in symbol.digits)


def parse_symbol(text: str) -> Symbol:
    """Parse FIELD FIELD FIELD FIELD with FIELD := digit | '.' | '*' | '(' digits ')'."""
    if not isinstance(text, str):
        raise SymbolParseError("symbol must be text", str(text), 0)
    text = text.strip().replace('·', '.')
    fields = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch in '0123':
            fields.append(frozenset({int(ch)}))
            i += 1
        elif ch == '.':
            fields.append(frozenset())
            i += 1
        elif ch == '*':
            fields.append(ALL_CODES)
            i += 1
        elif ch == '(':
            close = text.find(')', i)
            if close < 0:
                raise SymbolParseError("unclosed '('", text, i)
            inner = text[i + 1:close]
            if not inner:
                raise SymbolParseError("empty digit group", text, i)
            for offset, digit in enumerate(inner):
                if digit not in '0123':
                    raise SymbolParseError("expected digit 0-3", text, i + 1 + offset)
            fields.append(frozenset(int(digit) for digit in inner))
            i = close + 1
        else:
            raise SymbolParseError("unexpected character", text, i)
        if len(fields) > 4:
            raise SymbolParseError("more than four fields", text, i - 1)
    if len(fields) != 4:
        raise SymbolParseError("expected four fields", text, len(text))
    return Symbol(*fields)
