"""Marshmallow schema for the LEACH parameters."""

from marshmallow import RAISE, Schema, fields, post_load, validate

from wsnsim.protocols.models import LeachConfig
from wsnsim.utils.validations import validate_open_probability


class LeachConfigSchema(Schema):
    """Validate and load LeachConfig."""

    class Meta:
        unknown = RAISE

    p = fields.Float(load_default=0.05, validate=validate_open_probability)
    boost_rounds = fields.Integer(
        strict=True,
        load_default=None,
        allow_none=True,
        validate=validate.Range(min=1),
    )
    boost_factor = fields.Float(
        load_default=2.0, validate=validate.Range(min=1.0)
    )

    @post_load
    def make_config(self, data, **kwargs) -> LeachConfig:
        """Build the frozen LeachConfig value."""
        return LeachConfig(**data)
