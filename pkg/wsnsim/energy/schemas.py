"""Marshmallow schema for radio model overrides."""

from marshmallow import RAISE, Schema, fields, post_load

from wsnsim.energy.models import RadioParams
from wsnsim.utils.validations import validate_non_negative, validate_positive

_DEFAULTS = RadioParams()


class RadioParamsSchema(Schema):
    """Validate and load RadioParams; omitted keys keep the defaults."""

    class Meta:
        unknown = RAISE

    e_elec = fields.Float(
        load_default=_DEFAULTS.e_elec, validate=validate_positive
    )
    eps_fs = fields.Float(
        load_default=_DEFAULTS.eps_fs, validate=validate_positive
    )
    eps_mp = fields.Float(
        load_default=_DEFAULTS.eps_mp, validate=validate_positive
    )
    e_da = fields.Float(
        load_default=_DEFAULTS.e_da, validate=validate_positive
    )
    data_bits = fields.Integer(
        strict=True,
        load_default=_DEFAULTS.data_bits,
        validate=validate_positive,
    )
    ctrl_bits = fields.Integer(
        strict=True,
        load_default=_DEFAULTS.ctrl_bits,
        validate=validate_positive,
    )
    e_init = fields.Float(
        load_default=_DEFAULTS.e_init, validate=validate_non_negative
    )

    @post_load
    def make_params(self, data, **kwargs) -> RadioParams:
        """Build the frozen RadioParams value."""
        return RadioParams(**data)
