"""Common envelope for the JSON documents the simulator writes."""

from marshmallow import Schema, fields, validate

# Bumped whenever a written document changes shape; readers refuse others.
RESULT_SCHEMA_VERSION = 1


class StandardResponseSchema(Schema):
    """Envelope with status, message, data and the result format version."""

    schema_version = fields.Integer(
        dump_default=RESULT_SCHEMA_VERSION,
        load_default=RESULT_SCHEMA_VERSION,
        validate=validate.Equal(RESULT_SCHEMA_VERSION),
    )
    status = fields.String(required=True)
    message = fields.String(required=True)
    data = fields.Dict(required=True)
