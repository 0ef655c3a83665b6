"""
File codecs for tile sets, marked patches and domino patches.
"""
import json
import logging
from typing import Any, Dict, Optional

from marshmallow import ValidationError

from models.domino import DominoPatch, PlacedDomino
from models.mark import format_mark, parse_mark
from models.patch import MarkedPatch
from models.symbol import parse_symbol
from models.tile import SIDES, Tile, TileSet
from services.catalogue_service import canonical_name, catalogue, tile_from_name, tileset_from_names
from utils.errors import TilingError, UnnameableTileError
from utils.schemas import DominoPatchSchema, MarkedPatchSchema, TileSetFileSchema, TileSetRefSchema

logger = logging.getLogger(__name__)


def _load(schema, data: Any) -> dict:
    try:
        return schema.load(data)
    except ValidationError as exc:
        raise TilingError(f"invalid document: {exc.messages}") from exc


def _infer_context(entries) -> str:
    for entry in entries:
        if any(len(text.strip()) >= 4 for text in entry['edges'].values()):
            return 'T2'
    return 'T1'


def tileset_from_json(data: Dict[str, Any]) -> TileSet:
    """Accept the compact {"names": [...]} form or explicit tiles with edges."""
    document = _load(TileSetFileSchema(), data)
    name = document['name']
    if document['names'] is not None:
        return tileset_from_names(name, document['names'])
    entries = document['tiles']
    context = document['context'] or _infer_context(entries)
    tiles = []
    for entry in entries:
        edges = tuple(parse_mark(entry['edges'][side], context) for side in SIDES)
        tile = Tile(entry['cornered'], edges, entry['name'])
        try:
            tile = Tile(tile.cornered, tile.edges, canonical_name(tile))
        except UnnameableTileError:
            if not tile.name:
                tile = Tile(tile.cornered, tile.edges, ' '.join(format_mark(m) for m in edges))
        tiles.append(tile)
    return TileSet.of(name, tiles)


def resolve_tileset(data: Dict[str, Any]) -> TileSet:
    """A tile set named by catalogue, by symbol, or given inline."""
    reference = _load(TileSetRefSchema(), {k: data.get(k) for k in ('catalogue', 'symbol', 'tileset') if k in data})
    if reference['catalogue'] is not None:
        return catalogue(reference['catalogue'])
    if reference['symbol'] is not None:
        from services.synthesis_service import synthesize
        return synthesize(parse_symbol(reference['symbol']))
    return tileset_from_json(reference['tileset'])


def marked_patch_from_json(data: Dict[str, Any], tiles: Optional[TileSet] = None) -> MarkedPatch:
    """Cells name tiles; names found in the given set resolve there first."""
    document = _load(MarkedPatchSchema(), data)
    by_name = tiles.by_name() if tiles is not None else {}
    cells = {}
    for cell in document['cells']:
        tile = by_name.get(cell['tile']) or tile_from_name(cell['tile'])
        cells[(cell['x'], cell['y'])] = (tile, cell['pose'])
    return MarkedPatch(cells)


def domino_patch_from_json(data: Dict[str, Any]) -> DominoPatch:
    document = _load(DominoPatchSchema(), data)
    dominoes = (PlacedDomino(d['x'], d['y'], d['axis'], d['code']) for d in document['dominoes'])
    return DominoPatch.of(dominoes, document['level'])


def read_json(path: str) -> Dict[str, Any]:
    with open(path, encoding='utf-8') as handle:
        return json.load(handle)


def write_json(path: str, payload: Any) -> None:
    with open(path, 'w', encoding='utf-8') as handle:
        json.dump(payload, handle, indent=2, ensure_ascii=False)
        handle.write('\n')
    logger.info(f"Wrote {path}")
