"""Schemas for the scenario configuration file."""

from marshmallow import (
    RAISE,
    Schema,
    ValidationError,
    fields,
    post_dump,
    post_load,
    validate,
    validates,
)

from wsnsim.cli.models import (
    DEFAULT_PROTOCOLS,
    DEFAULT_SEEDS,
    GridSpec,
    ScenarioConfig,
)
from wsnsim.energy.models import RadioParams
from wsnsim.energy.schemas import RadioParamsSchema
from wsnsim.field.models import Position
from wsnsim.protocols.enums import PROTOCOL_NAMES
from wsnsim.protocols.models import LeachConfig
from wsnsim.protocols.schemas import LeachConfigSchema
from wsnsim.utils.validations import validate_finite, validate_positive


class PositionSchema(Schema):
    """Schema for a point in the plane."""

    class Meta:
        unknown = RAISE

    x = fields.Float(required=True, validate=validate_finite)
    y = fields.Float(required=True, validate=validate_finite)

    @post_load
    def make_position(self, data, **kwargs) -> Position:
        """Build the Position value."""
        return Position(**data)


class GridSchema(Schema):
    """Schema for a lattice deployment."""

    class Meta:
        unknown = RAISE

    nx = fields.Integer(strict=True, required=True, validate=validate.Range(1))
    ny = fields.Integer(strict=True, required=True, validate=validate.Range(1))
    spacing = fields.Float(required=True, validate=validate_positive)

    @post_load
    def make_grid(self, data, **kwargs) -> GridSpec:
        """Build the GridSpec value."""
        return GridSpec(**data)


class NodeCountField(fields.Field):
    """A node count, or a list of counts to sweep the scenario over."""

    _count = fields.Integer(strict=True, validate=validate.Range(min=1))

    def _deserialize(self, value, attr, data, **kwargs):
        if not isinstance(value, list):
            return self._count.deserialize(value)
        if not value:
            raise ValidationError("At least one node count is required.")
        counts = tuple(self._count.deserialize(item) for item in value)
        if len(set(counts)) != len(counts):
            raise ValidationError("Node counts must not repeat.")
        return counts

    def _serialize(self, value, attr, obj, **kwargs):
        return list(value) if isinstance(value, tuple) else value


class ScenarioConfigSchema(Schema):
    """
    Validate a scenario document and fill the documented defaults.

    Unknown keys are rejected at every nesting level.
    """

    class Meta:
        unknown = RAISE

    nodes = NodeCountField(load_default=100)
    deployment = fields.String(
        load_default="uniform",
        validate=validate.OneOf(
            ["uniform", "grid"], error="deployment must be uniform or grid"
        ),
    )
    width = fields.Float(load_default=100.0, validate=validate_positive)
    height = fields.Float(load_default=100.0, validate=validate_positive)
    grid = fields.Nested(GridSchema, load_default=None, allow_none=True)
    bs = fields.Nested(PositionSchema, load_default=None, allow_none=True)
    radio = fields.Nested(RadioParamsSchema, load_default=RadioParams)
    protocols = fields.List(
        fields.String(
            validate=validate.OneOf(
                PROTOCOL_NAMES,
                error="Protocol must be one of: " + ", ".join(PROTOCOL_NAMES),
            )
        ),
        load_default=lambda: list(DEFAULT_PROTOCOLS),
        validate=validate.Length(min=1),
    )
    leach = fields.Nested(LeachConfigSchema, load_default=LeachConfig)
    frames_per_round = fields.Integer(
        strict=True, load_default=1, validate=validate.Range(min=1)
    )
    max_rounds = fields.Integer(
        strict=True, load_default=5000, validate=validate.Range(min=1)
    )
    seeds = fields.List(
        fields.Integer(strict=True, validate=validate.Range(min=0)),
        load_default=lambda: list(DEFAULT_SEEDS),
        validate=validate.Length(min=1),
    )
    control_energy = fields.Boolean(load_default=False)
    radio_range = fields.Float(
        load_default=None, allow_none=True, validate=validate_positive
    )
    output_dir = fields.String(load_default="results")

    @validates("protocols")
    def validate_unique_protocols(self, value, **kwargs):
        """Reject a protocol listed twice."""
        if len(set(value)) != len(value):
            raise ValidationError("Protocols must not repeat.")

    @validates("seeds")
    def validate_unique_seeds(self, value, **kwargs):
        """Reject a seed listed twice."""
        if len(set(value)) != len(value):
            raise ValidationError("Seeds must not repeat.")

    @post_load
    def make_config(self, data, **kwargs) -> ScenarioConfig:
        """Build the frozen ScenarioConfig value."""
        if isinstance(data["nodes"], tuple):
            counts = data["nodes"]
            data["nodes"] = counts[0]
            data["node_sweep"] = counts if len(counts) > 1 else ()
        data["protocols"] = tuple(data["protocols"])
        data["seeds"] = tuple(data["seeds"])
        return ScenarioConfig(**data)

    @post_dump(pass_original=True)
    def dump_node_sweep(self, data, original, **kwargs):
        """Write a swept scenario's node counts back as a list."""
        if getattr(original, "node_sweep", ()):
            data["nodes"] = list(original.node_sweep)
        return data
