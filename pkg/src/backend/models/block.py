"""
Marked blocks of the block calculus.
"""
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

BLOCK_TYPES = ('U', 'J', 'I', 'H')
FRAME_POSITIONS = ('i', 'ii', 'iii', 'iv', 'v', 'vi', 'vii', 'viii', 'ix')

# Roles of the four children of a domino-rule parent
SLOT_ROLES = {'s': 'J0', 't': 'J2', 'u': 'H', 'v': 'U'}
ROLE_TYPES = {'J0': 'J', 'J2': 'J', 'H': 'H', 'U': 'U'}


@dataclass(frozen=True)
class MarkingFrame:
    """Mark classes at positions i..ix; 'x' marks the free position ii."""
    btype: str
    assignments: Tuple[Tuple[str, str], ...]

    def __getitem__(self, position: str) -> str:
        return dict(self.assignments)[position]

    def to_dict(self) -> Dict[str, str]:
        return {'btype': self.btype, **dict(self.assignments)}


@dataclass(frozen=True, order=True)
class BlockState:
    """
    A block X(x). In the T1 context x is a mark class ('+', '0'..'3', a
    negated class '-+', '-0'.. or the symbolic 'x'/'-x'). In the T2 context
    slot names the child role and orient its framing code.
    """
    btype: str
    x: str = 'x'
    slot: Optional[str] = None
    orient: Optional[int] = None

    @property
    def generic(self) -> bool:
        return self.x in ('x', '-x')

    @property
    def role(self) -> Optional[str]:
        return SLOT_ROLES.get(self.slot) if self.slot else None

    def label(self) -> str:
        if self.slot is not None:
            return f"{self.role}[{self.slot}{self.orient}]"
        return f"{self.btype}({self.x})"

    def to_dict(self):
        return {'btype': self.btype, 'x': self.x, 'slot': self.slot, 'orient': self.orient, 'label': self.label()}

    def __repr__(self):
        return f'<BlockState {self.label()}>'


@dataclass(frozen=True)
class Production:
    """X(x) -> children, with the tiles the substitution places."""
    rule: str
    lhs: str
    children: Tuple[str, ...]
    tally: Tuple[str, ...]
    when: Optional[str] = field(default=None)

    def to_dict(self):
        return {'rule': self.rule, 'lhs': self.lhs, 'children': list(self.children),
                'tally': list(self.tally), 'when': self.when}
