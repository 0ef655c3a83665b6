"""
Tile-set routes.
Named catalogues, synthesis of T_S, the classification rows, admissibility
and rule closures.
"""
from flask import Blueprint, request, jsonify, current_app
from utils.extensions import cache
from utils.schemas import ClosureRequestSchema, SymbolRequestSchema, TileSetRefSchema
from utils.validators import load_request, validate_rules, validate_symbol_text
from models.symbol import format_symbol, parse_symbol
from services.block_service import RULE_LABELS, block_admissibility, closure, enforced_rules
from services.catalogue_service import catalogue
from services.io_service import resolve_tileset
from services.symbol_service import canonical_rep
from services.synthesis_service import synthesize, theorem1_sets

tilesets_bp = Blueprint('tilesets', __name__, url_prefix='/api/v1/tilesets')

@tilesets_bp.route('/catalogues/<name>', methods=['GET'])
def get_catalogue(name):
    """
    One of the named catalogues (T1, T_Pi, K2, U2, T2, ...).

    Response:
        200: {"name": ..., "size": int, "tiles": [...]}
        400: {"error": "unknown catalogue ..."}
    """
    return jsonify(catalogue(name).to_dict()), 200

@cache.memoize(timeout=600)
def _synthesized(canonical: str):
    return synthesize(parse_symbol(canonical)).to_dict()

@tilesets_bp.route('/synthesize', methods=['POST'])
def synthesize_tileset():
    """
    Assemble T_S for a full symbol.

    Request body:
        {"symbol": "1101"}

    Response:
        200: {"name": "T_1101", "size": 67, "tiles": [...]}
    """
    data, error = load_request(SymbolRequestSchema(), request.get_json(silent=True))
    if error:
        return jsonify({'error': error}), 400

    is_valid, error = validate_symbol_text(data['symbol'])
    if not is_valid:
        return jsonify({'error': error}), 400

    symbol = parse_symbol(data['symbol'])
    result = _synthesized(format_symbol(symbol))
    current_app.logger.info(f"Synthesized T_{format_symbol(symbol)} ({result['size']} tiles), "
                            f"class of {format_symbol(canonical_rep(symbol))}")

    return jsonify(result), 200

@tilesets_bp.route('/theorem1', methods=['GET'])
def theorem1():
    """
    The nine T1 rows with the rules they enforce and the blocks they admit.
    """
    return jsonify({'rows': [row.to_dict() for row in theorem1_sets()]}), 200

@tilesets_bp.route('/admissible', methods=['POST'])
def admissible():
    """
    Blocks admitted and rules enforced by a tile set.

    Request body:
        {"catalogue": "T_Pibar"} or {"symbol": "1101"} or {"tileset": {...}}
    """
    data, error = load_request(TileSetRefSchema(), request.get_json(silent=True))
    if error:
        return jsonify({'error': error}), 400

    tiles = resolve_tileset(data)

    return jsonify({
        'name': tiles.name,
        'size': len(tiles),
        'blocks': sorted(block_admissibility(tiles)),
        'rules': sorted(RULE_LABELS[r] for r in enforced_rules(tiles)),
    }), 200

@tilesets_bp.route('/closure', methods=['POST'])
def rule_closure():
    """
    Tile tally closed under the given rules.

    Request body:
        {"rules": ["pi", "par"]}
    """
    data, error = load_request(ClosureRequestSchema(), request.get_json(silent=True))
    if error:
        return jsonify({'error': error}), 400

    is_valid, error = validate_rules(data['rules'])
    if not is_valid:
        return jsonify({'error': error}), 400

    return jsonify(closure(data['rules']).to_dict()), 200
