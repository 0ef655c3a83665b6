"""
Marshmallow schemas for the JSON file formats and request bodies.
"""
from marshmallow import EXCLUDE, Schema, ValidationError, fields, validate, validates_schema

SIDES = ('N', 'E', 'S', 'W')
MODES = ('FIRST', 'COUNT', 'ALL')
BOUNDARIES = ('FREE', 'FIXED', 'TORUS')


class EdgesSchema(Schema):
    N = fields.String(required=True)
    E = fields.String(required=True)
    S = fields.String(required=True)
    W = fields.String(required=True)


class FileSchema(Schema):
    """Documents written by to_dict() carry derived keys; loading ignores them."""
    class Meta:
        unknown = EXCLUDE


class TileEntrySchema(FileSchema):
    name = fields.String(load_default='')
    cornered = fields.Boolean(load_default=False)
    edges = fields.Nested(EdgesSchema, required=True)


class TileSetFileSchema(FileSchema):
    """Either the compact list of names or the explicit tiles with edges."""
    name = fields.String(load_default='custom')
    context = fields.String(validate=validate.OneOf(('T1', 'T2')), allow_none=True, load_default=None)
    names = fields.List(fields.String(), load_default=None)
    tiles = fields.List(fields.Nested(TileEntrySchema), load_default=None)

    @validates_schema
    def one_form(self, data, **kwargs):
        if data.get('names') is None and data.get('tiles') is None:
            raise ValidationError("either 'names' or 'tiles' is required")


class TileSetRefSchema(Schema):
    """A named catalogue, a synthesized symbol, or an inline tile set."""
    catalogue = fields.String(load_default=None)
    symbol = fields.String(load_default=None)
    tileset = fields.Dict(load_default=None)

    @validates_schema
    def one_source(self, data, **kwargs):
        given = [key for key in ('catalogue', 'symbol', 'tileset') if data.get(key) is not None]
        if len(given) != 1:
            raise ValidationError("give exactly one of 'catalogue', 'symbol' or 'tileset'")


class MarkedCellSchema(FileSchema):
    x = fields.Integer(required=True)
    y = fields.Integer(required=True)
    tile = fields.String(required=True)
    pose = fields.Integer(load_default=0, validate=validate.Range(min=0, max=7))


class MarkedPatchSchema(FileSchema):
    cells = fields.List(fields.Nested(MarkedCellSchema), required=True)


class DominoSchema(FileSchema):
    x = fields.Integer(required=True)
    y = fields.Integer(required=True)
    axis = fields.String(required=True, validate=validate.OneOf(('H', 'V')))
    code = fields.Integer(required=True, validate=validate.Range(min=0, max=3))


class DominoPatchSchema(FileSchema):
    level = fields.Integer(load_default=0, validate=validate.Range(min=0))
    dominoes = fields.List(fields.Nested(DominoSchema), required=True)


class FixedEdgeSchema(Schema):
    x = fields.Integer(required=True)
    y = fields.Integer(required=True)
    side = fields.String(required=True, validate=validate.OneOf(SIDES))
    mark = fields.String(required=True)


# --- request bodies --------------------------------------------------------

class SymbolRequestSchema(Schema):
    symbol = fields.String(required=True)


class EquivalentRequestSchema(Schema):
    first = fields.String(required=True)
    second = fields.String(required=True)


class ClosureRequestSchema(Schema):
    rules = fields.List(fields.String(), required=True, validate=validate.Length(min=1))


class ExpandRequestSchema(Schema):
    symbol = fields.String(required=True)
    level = fields.Integer(required=True, validate=validate.Range(min=0))
    seed = fields.Integer(load_default=None)
    choices = fields.List(fields.Integer(validate=validate.Range(min=0, max=3)), load_default=None)


class DeflateRequestSchema(Schema):
    symbol = fields.String(required=True)
    patch = fields.Nested(DominoPatchSchema, required=True)


class RenderRequestSchema(ExpandRequestSchema):
    scale = fields.Integer(load_default=20, validate=validate.Range(min=1, max=200))
    show_codes = fields.Boolean(load_default=False)


class VerifyRequestSchema(TileSetRefSchema):
    patch = fields.Nested(MarkedPatchSchema, required=True)


class SolveRequestSchema(TileSetRefSchema):
    width = fields.Integer(required=True, validate=validate.Range(min=1))
    height = fields.Integer(required=True, validate=validate.Range(min=1))
    mode = fields.String(load_default='FIRST', validate=validate.OneOf(MODES))
    boundary = fields.String(load_default='FREE', validate=validate.OneOf(BOUNDARIES))
    fixed = fields.List(fields.Nested(FixedEdgeSchema), load_default=list)
    budget = fields.Integer(load_default=None, validate=validate.Range(min=1))


class TorusRequestSchema(TileSetRefSchema):
    width = fields.Integer(required=True, validate=validate.Range(min=1))
    height = fields.Integer(required=True, validate=validate.Range(min=1))
    budget = fields.Integer(load_default=None, validate=validate.Range(min=1))
