"""
Solver routes.
Patch verification, region tiling and torus period search.
"""
from flask import Blueprint, request, jsonify, current_app
from utils.schemas import SolveRequestSchema, TorusRequestSchema, VerifyRequestSchema
from utils.validators import load_request, validate_region
from models.mark import parse_mark
from models.patch import Boundary, Region, SolveMode
from services.io_service import marked_patch_from_json, resolve_tileset
from services.solver_service import parity_result, solve, torus_search, verify_patch

solver_bp = Blueprint('solver', __name__, url_prefix='/api/v1/solver')

@solver_bp.route('/verify', methods=['POST'])
def verify():
    """
    Check a marked patch against a tile set.

    Request body:
        {"catalogue": "T_Pibar", "patch": {"cells": [{"x": 0, "y": 0, "tile": "[-+]", "pose": 0}]}}

    Response:
        200: {"ok": bool, "violations": [...]}
    """
    data, error = load_request(VerifyRequestSchema(), request.get_json(silent=True))
    if error:
        return jsonify({'error': error}), 400

    tiles = resolve_tileset(data)
    patch = marked_patch_from_json(data['patch'], tiles)
    violations = verify_patch(tiles, patch)

    return jsonify({'ok': not violations, 'violations': [v.to_dict() for v in violations]}), 200

@solver_bp.route('/solve', methods=['POST'])
def solve_region():
    """
    Tile a region.

    Request body:
        {"catalogue": "T1", "width": 2, "height": 2, "mode": "FIRST", "boundary": "FREE"}

    Response:
        200: {"status": "SAT", "count": int, "nodes": int, "tilings": [...]}
    """
    data, error = load_request(SolveRequestSchema(), request.get_json(silent=True))
    if error:
        return jsonify({'error': error}), 400

    boundary = Boundary(data['boundary'])
    is_valid, error = validate_region(data['width'], data['height'], boundary == Boundary.TORUS)
    if not is_valid:
        return jsonify({'error': error}), 400

    tiles = resolve_tileset(data)
    if boundary == Boundary.TORUS:
        parity = parity_result(data['width'], data['height'])
        if parity is not None:
            return jsonify(parity.to_dict()), 200
    context = tiles.context
    fixed = tuple(((f['x'], f['y'], f['side']), parse_mark(f['mark'], context)) for f in data['fixed'])
    try:
        region = Region(data['width'], data['height'], boundary, fixed)
    except ValueError as exc:
        return jsonify({'error': str(exc)}), 400

    budget = data['budget'] or current_app.config['SOLVER_NODE_BUDGET']
    result = solve(tiles, region, SolveMode(data['mode']), budget)
    current_app.logger.info(f"Solve {region.width}x{region.height} on {tiles.name}: {result.status.value}")

    return jsonify(result.to_dict()), 200

@solver_bp.route('/torus', methods=['POST'])
def torus():
    """
    Search for a periodic tiling with the given periods.

    Response:
        200: {"status": "NONE" | "NONE_BY_PARITY" | "SAT" | "TIMEOUT", ...}
    """
    data, error = load_request(TorusRequestSchema(), request.get_json(silent=True))
    if error:
        return jsonify({'error': error}), 400

    is_valid, error = validate_region(data['width'], data['height'], torus=True)
    if not is_valid:
        return jsonify({'error': error}), 400

    tiles = resolve_tileset(data)
    budget = data['budget'] or current_app.config['SOLVER_NODE_BUDGET']
    result = torus_search(tiles, data['width'], data['height'], budget, current_app.config['TORUS_MAX_PERIOD'])

    return jsonify(result.to_dict()), 200
