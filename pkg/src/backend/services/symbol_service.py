"""
Symbol algebra service.
Classification, atoms, deterministic components, shifts, the pairing
S ~ (t+3, s+3, u+3, v+3), the census of full symbols and the
non-unique-decomposition families.
"""
import enum
import itertools
import logging
from functools import lru_cache
from typing import Dict, List, Set

from models.mark import nim_add
from models.symbol import Symbol, SymbolClass, format_symbol
from utils.errors import NotFullSymbolError

logger = logging.getLogger(__name__)

PROP2_DIGITS = (frozenset({0}), frozenset({1}), frozenset({2}), frozenset({3}),
                frozenset({0, 2}), frozenset({1, 3}))


class Prop2Class(str, enum.Enum):
    NOT_APPLICABLE = 'NOT_APPLICABLE'
    PERIODIC_NONUNIQUE = 'PERIODIC_NONUNIQUE'
    NONPERIODIC_NONUNIQUE = 'NONPERIODIC_NONUNIQUE'


def classify(symbol: Symbol) -> SymbolClass:
    if symbol.is_deterministic:
        return SymbolClass.DETERMINISTIC
    if symbol.is_full:
        return SymbolClass.FULL
    if symbol.is_atomic:
        return SymbolClass.ATOMIC
    return SymbolClass.PARTIAL


def atoms(symbol: Symbol) -> Set[Symbol]:
    """One atomic symbol per (slot, digit) present in the symbol."""
    result = set()
    for index, digits in enumerate(symbol.digits):
        for digit in digits:
            fields = [frozenset()] * 4
            fields[index] = frozenset({digit})
            result.add(Symbol(*fields))
    return result


def det_components(symbol: Symbol) -> Set[Symbol]:
    if not symbol.is_full:
        raise NotFullSymbolError(f"{format_symbol(symbol)} is not full")
    return {Symbol.deterministic(*choice) for choice in itertools.product(*(sorted(d) for d in symbol.digits))}


def _shift_digits(digits, k: int):
    return frozenset(nim_add(d, k) for d in digits)


def symbol_shift(symbol: Symbol, k: int) -> Symbol:
    return Symbol(*(_shift_digits(d, k) for d in symbol.digits))


def partner(symbol: Symbol) -> Symbol:
    """(stuv)' = (tsuv) + 3."""
    return Symbol(_shift_digits(symbol.t, 3), _shift_digits(symbol.s, 3),
                  _shift_digits(symbol.u, 3), _shift_digits(symbol.v, 3))


def equivalent(first: Symbol, second: Symbol) -> bool:
    return first == second or partner(first) == second


def _spelling_key(symbol: Symbol):
    return tuple(tuple(sorted(d)) if len(d) != 0 else () for d in symbol.digits)


def canonical_rep(symbol: Symbol) -> Symbol:
    """Lexicographic minimum of a symbol and its partner."""
    other = partner(symbol)
    return min(symbol, other, key=_spelling_key)


# --- census ----------------------------------------------------------------

_MASKS = range(1, 16)


def _mask_shift3(mask: int) -> int:
    out = 0
    for digit in range(4):
        if mask & (1 << digit):
            out |= 1 << (digit ^ 3)
    return out


@lru_cache(maxsize=None)
def census() -> Dict[str, int]:
    """
    Count full symbols, self-paired symbols and classes by enumeration.

    Returns:
        {'full', 'self_paired', 'classes', 'det_symbols', 'det_classes'}
    """
    shift3 = {mask: _mask_shift3(mask) for mask in _MASKS}
    singletons = {1, 2, 4, 8}
    full = self_paired = classes = det_symbols = det_classes = 0
    for s, t, u, v in itertools.product(_MASKS, repeat=4):
        full += 1
        image = (shift3[t], shift3[s], shift3[u], shift3[v])
        own = (s, t, u, v)
        deterministic = s in singletons and t in singletons and u in singletons and v in singletons
        if image == own:
            self_paired += 1
        if own <= image:
            classes += 1
            if deterministic:
                det_classes += 1
        if deterministic:
            det_symbols += 1
    expected = (full - self_paired) // 2 + self_paired
    if expected != classes:
        logger.warning(f"Census formula mismatch: counted {classes}, formula gives {expected}")
    logger.info(f"Census: {full} full, {self_paired} self-paired, {classes} classes")
    return {
        'full': full,
        'self_paired': self_paired,
        'classes': classes,
        'det_symbols': det_symbols,
        'det_classes': det_classes,
    }


def deterministic_symbols() -> List[Symbol]:
    return [Symbol.deterministic(*codes) for codes in itertools.product(range(4), repeat=4)]


# --- families with non-unique decomposition --------------------------------

def prop2_classify(symbol: Symbol) -> Prop2Class:
    if not symbol.is_full:
        raise NotFullSymbolError(f"{format_symbol(symbol)} is not full")
    s, t, u, v = symbol.digits
    if s != t or u != v or s not in PROP2_DIGITS or u not in PROP2_DIGITS:
        return Prop2Class.NOT_APPLICABLE
    if s != u:
        return Prop2Class.NONPERIODIC_NONUNIQUE
    return Prop2Class.PERIODIC_NONUNIQUE


@lru_cache(maxsize=None)
def prop2_tally() -> Dict[str, int]:
    """
    Enumerated counts for the s=t, u=v families, with orbits under the
    framing shifts S -> S+k.
    """
    members = [Symbol(s, s, u, u) for s in PROP2_DIGITS for u in PROP2_DIGITS]
    nonperiodic = [m for m in members if m.s != m.u]
    orbits = {frozenset(symbol_shift(m, k) for k in range(4)) for m in members}
    nonperiodic_orbits = {o for o in orbits if next(iter(o)).s != next(iter(o)).u}
    det_orbits = {o for o in orbits if next(iter(o)).is_deterministic}
    tally = {
        'applicable': len(members),
        'nonperiodic': len(nonperiodic),
        'deterministic': sum(1 for m in members if m.is_deterministic),
        'deterministic_nonperiodic': sum(1 for m in nonperiodic if m.is_deterministic),
        'shift_orbits': len(orbits),
        'nonperiodic_shift_orbits': len(nonperiodic_orbits),
        'deterministic_shift_orbits': len(det_orbits),
    }
    if tally['deterministic_shift_orbits'] != 4:
        logger.warning(f"Expected four deterministic quadruples, enumerated {tally['deterministic_shift_orbits']}")
    return tally
