"""
Symbol routes.
Classification, atoms, equivalence and the census of substitution symbols.
"""
from flask import Blueprint, request, jsonify, current_app
from utils.extensions import cache
from utils.schemas import EquivalentRequestSchema, SymbolRequestSchema
from utils.validators import load_request, validate_symbol_text
from models.symbol import format_symbol, parse_symbol
from services.symbol_service import (
    atoms, canonical_rep, census, classify, det_components, equivalent, partner,
    prop2_classify, prop2_tally
)

symbols_bp = Blueprint('symbols', __name__, url_prefix='/api/v1/symbols')

@symbols_bp.route('/classify', methods=['POST'])
def classify_symbol():
    """
    Classify a symbol.

    Request body:
        {"symbol": "1101"}

    Response:
        200: {"symbol": "1101", "class": "DETERMINISTIC", ...}
        400: {"error": "..."}
    """
    data, error = load_request(SymbolRequestSchema(), request.get_json(silent=True))
    if error:
        return jsonify({'error': error}), 400

    is_valid, error = validate_symbol_text(data['symbol'], full=False)
    if not is_valid:
        return jsonify({'error': error}), 400

    symbol = parse_symbol(data['symbol'])
    result = {
        'symbol': format_symbol(symbol),
        'class': classify(symbol).value,
        'full': symbol.is_full,
        'deterministic': symbol.is_deterministic,
    }
    if symbol.is_full:
        result['partner'] = format_symbol(partner(symbol))
        result['family'] = prop2_classify(symbol).value

    return jsonify(result), 200

@symbols_bp.route('/atoms', methods=['POST'])
def list_atoms():
    """
    Atoms and deterministic components of a symbol.

    Response:
        200: {"atoms": [...], "components": [...]}
    """
    data, error = load_request(SymbolRequestSchema(), request.get_json(silent=True))
    if error:
        return jsonify({'error': error}), 400

    is_valid, error = validate_symbol_text(data['symbol'], full=False)
    if not is_valid:
        return jsonify({'error': error}), 400

    symbol = parse_symbol(data['symbol'])
    result = {'atoms': sorted(format_symbol(a) for a in atoms(symbol))}
    if symbol.is_full:
        result['components'] = sorted(format_symbol(c) for c in det_components(symbol))

    return jsonify(result), 200

@symbols_bp.route('/equivalent', methods=['POST'])
def check_equivalent():
    """
    Whether two full symbols are equal or partners.

    Request body:
        {"first": "0231", "second": "1302"}
    """
    data, error = load_request(EquivalentRequestSchema(), request.get_json(silent=True))
    if error:
        return jsonify({'error': error}), 400

    for text in (data['first'], data['second']):
        is_valid, error = validate_symbol_text(text)
        if not is_valid:
            return jsonify({'error': error}), 400

    first, second = parse_symbol(data['first']), parse_symbol(data['second'])

    return jsonify({
        'equivalent': equivalent(first, second),
        'canonical': [format_symbol(canonical_rep(first)), format_symbol(canonical_rep(second))],
    }), 200

@cache.memoize(timeout=3600)
def _census_payload():
    return {**census(), 'families': prop2_tally()}

@symbols_bp.route('/census', methods=['GET'])
def symbol_census():
    """
    Counts of full symbols and their classes.

    Response:
        200: {"full": 50625, "self_paired": 135, "classes": 25380, ...}
    """
    current_app.logger.info("Census requested")
    return jsonify(_census_payload()), 200
