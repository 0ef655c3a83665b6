"""
Input validation utilities.
"""
from typing import Iterable, Tuple

from flask import current_app
from marshmallow import ValidationError

from models.symbol import parse_symbol
from utils.errors import SymbolParseError


def validate_symbol_text(text: str, full: bool = True) -> Tuple[bool, str]:
    """
    Validate a symbol spelling such as '1101' or '(02)1.3'.

    Returns:
        (is_valid, error_message)
    """
    if not text or not str(text).strip():
        return False, "Symbol is required"

    try:
        symbol = parse_symbol(text)
    except SymbolParseError as exc:
        return False, exc.message

    if full and not symbol.is_full:
        return False, "Symbol must be full (every slot needs at least one code)"

    return True, ""


def validate_level(level: int, limit_key: str = 'MAX_EXPAND_LEVEL') -> Tuple[bool, str]:
    """Validate a substitution level against the configured maximum"""
    limit = current_app.config[limit_key]

    if level is None:
        return False, "Level is required"

    if level < 0 or level > limit:
        return False, f"Level must be between 0 and {limit}"

    return True, ""


def validate_region(width: int, height: int, torus: bool = False) -> Tuple[bool, str]:
    """Validate region dimensions; tori are bounded by the configured period"""
    if width < 1 or height < 1:
        return False, "Region needs at least one cell"

    if torus:
        limit = current_app.config['TORUS_MAX_PERIOD']
        if width > limit or height > limit:
            return False, f"Torus periods must not exceed {limit}"

    return True, ""


def validate_rules(rules: Iterable[str]) -> Tuple[bool, str]:
    """Validate rule family names"""
    valid_rules = ['pi', 'par', 'xi', 'pibar', 'pibar02', 'pibar13', 'Π', '∥', 'Ξ', 'Π̄']

    for rule in rules:
        if rule.strip() not in valid_rules:
            return False, f"Rule must be one of: {', '.join(valid_rules[:4])}"

    return True, ""


def load_request(schema, data) -> Tuple[dict, str]:
    """
    Validate a JSON body against a marshmallow schema.

    Returns:
        (loaded_data, error_message)
    """
    if not data:
        return None, "Request body is required"

    try:
        return schema.load(data), ""
    except ValidationError as exc:
        return None, f"Invalid request: {exc.messages}"
