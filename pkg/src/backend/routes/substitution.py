"""
Substitution routes.
Expansion of dominoes into supertiles, deflation and SVG rendering.
"""
from flask import Blueprint, Response, request, jsonify, current_app
from utils.schemas import DeflateRequestSchema, ExpandRequestSchema, RenderRequestSchema
from utils.validators import load_request, validate_level, validate_symbol_text
from models.symbol import format_symbol, parse_symbol
from services.io_service import domino_patch_from_json
from services.render_service import RenderSpec, render_domino_svg
from services.substitution_service import SeededChooser, SequenceChooser, deflate, expand

substitution_bp = Blueprint('substitution', __name__, url_prefix='/api/v1/substitution')

def _expanded(data):
    symbol = parse_symbol(data['symbol'])
    if data.get('choices'):
        chooser = SequenceChooser(data['choices'])
    else:
        seed = data['seed'] if data.get('seed') is not None else current_app.config['DEFAULT_SEED']
        chooser = SeededChooser(seed)
    return expand(symbol, data['level'], chooser, current_app.config['MAX_EXPAND_LEVEL'])

@substitution_bp.route('/expand', methods=['POST'])
def expand_symbol():
    """
    Level-n supertile of a horizontal domino.

    Request body:
        {"symbol": "0231", "level": 2, "seed": 0}

    Response:
        200: {"level": 2, "width": ..., "height": ..., "dominoes": [...]}
    """
    data, error = load_request(ExpandRequestSchema(), request.get_json(silent=True))
    if error:
        return jsonify({'error': error}), 400

    is_valid, error = validate_symbol_text(data['symbol'])
    if not is_valid:
        return jsonify({'error': error}), 400

    is_valid, error = validate_level(data['level'])
    if not is_valid:
        return jsonify({'error': error}), 400

    patch = _expanded(data)
    current_app.logger.info(f"Expanded {data['symbol']} to level {data['level']}")

    return jsonify(patch.to_dict()), 200

@substitution_bp.route('/deflate', methods=['POST'])
def deflate_patch():
    """
    Group a supertile into its parents under a deterministic symbol.

    Response:
        200: {"patch": {...}} or {"patch": null} when no decomposition exists
    """
    data, error = load_request(DeflateRequestSchema(), request.get_json(silent=True))
    if error:
        return jsonify({'error': error}), 400

    is_valid, error = validate_symbol_text(data['symbol'])
    if not is_valid:
        return jsonify({'error': error}), 400

    patch = domino_patch_from_json(data['patch'])
    parent = deflate(patch, parse_symbol(data['symbol']))

    return jsonify({
        'symbol': format_symbol(parse_symbol(data['symbol'])),
        'patch': parent.to_dict() if parent is not None else None,
    }), 200

@substitution_bp.route('/render', methods=['POST'])
def render_supertile():
    """
    SVG of a level-n supertile.

    Response:
        200: image/svg+xml
    """
    data, error = load_request(RenderRequestSchema(), request.get_json(silent=True))
    if error:
        return jsonify({'error': error}), 400

    is_valid, error = validate_symbol_text(data['symbol'])
    if not is_valid:
        return jsonify({'error': error}), 400

    is_valid, error = validate_level(data['level'])
    if not is_valid:
        return jsonify({'error': error}), 400

    spec = RenderSpec(scale=data['scale'], show_codes=data['show_codes'])
    return Response(render_domino_svg(_expanded(data), spec), mimetype='image/svg+xml'), 200
