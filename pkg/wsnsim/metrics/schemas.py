"""Schemas for the summary and comparison documents."""

from marshmallow import Schema, fields, post_load

from wsnsim.metrics.models import (
    ComparisonRow,
    ComparisonTable,
    LifetimeSummary,
)
from wsnsim.utils.common_schema import StandardResponseSchema


class LifetimeSummarySchema(Schema):
    """Serialize one run's LifetimeSummary."""

    fnd = fields.Int(required=True)
    hnd = fields.Int(required=True)
    lnd = fields.Int(required=True)
    total_energy = fields.Float(required=True)
    total_delivered = fields.Int(required=True)
    energy_per_delivered_bit = fields.Float(required=True, allow_none=True)
    rounds = fields.Int(load_default=0)
    redundant_transfers = fields.Int(load_default=0)

    @post_load
    def make_summary(self, data, **kwargs) -> LifetimeSummary:
        """Rebuild the LifetimeSummary value."""
        return LifetimeSummary(**data)


class RunSummarySchema(Schema):
    """One seed's summary plus its reliability figures."""

    seed = fields.Int(required=True)
    summary = fields.Nested(LifetimeSummarySchema, required=True)
    final_reliability = fields.Float(required=True)


class ProtocolSummarySchema(Schema):
    """Every run of one protocol under one scenario."""

    protocol = fields.String(required=True)
    scenario = fields.Dict(required=True)
    runs = fields.List(fields.Nested(RunSummarySchema), required=True)


class ProtocolSummaryDocumentSchema(StandardResponseSchema):
    """Wrap a protocol summary in the standard envelope."""

    data = fields.Nested(ProtocolSummarySchema, required=True)


class ComparisonRowSchema(Schema):
    """Serialize one comparison row."""

    protocol = fields.String(required=True)
    runs = fields.Int(required=True)
    fnd_median = fields.Float(required=True)
    fnd_iqr = fields.Float(required=True)
    hnd_median = fields.Float(required=True)
    hnd_iqr = fields.Float(required=True)
    lnd_median = fields.Float(required=True)
    lnd_iqr = fields.Float(required=True)
    total_energy_mean = fields.Float(required=True)
    energy_per_delivered_bit_mean = fields.Float(
        required=True, allow_none=True
    )
    delivered_mean = fields.Float(required=True)

    @post_load
    def make_row(self, data, **kwargs) -> ComparisonRow:
        """Rebuild the ComparisonRow value."""
        return ComparisonRow(**data)


class ComparisonTableSchema(Schema):
    """Serialize the comparison table."""

    rows = fields.List(fields.Nested(ComparisonRowSchema), required=True)
    improvements = fields.Dict(
        keys=fields.String(),
        values=fields.Dict(
            keys=fields.String(), values=fields.Float(allow_none=True)
        ),
        required=True,
    )

    @post_load
    def make_table(self, data, **kwargs) -> ComparisonTable:
        """Rebuild the ComparisonTable value."""
        return ComparisonTable(**data)


class ComparisonDocumentSchema(StandardResponseSchema):
    """Wrap the comparison table in the standard envelope."""

    data = fields.Nested(ComparisonTableSchema, required=True)


COMPARISON_CSV_COLUMNS = [
    "protocol",
    "runs",
    "fnd_median",
    "fnd_iqr",
    "hnd_median",
    "hnd_iqr",
    "lnd_median",
    "lnd_iqr",
    "total_energy_mean",
    "energy_per_delivered_bit_mean",
    "delivered_mean",
]


class NodeCountMilestonesSchema(Schema):
    """Serialize one (node count, protocol) milestone row."""

    node_count = fields.Int(required=True)
    protocol = fields.String(required=True)
    runs = fields.Int(required=True)
    fnd_median = fields.Float(required=True)
    hnd_median = fields.Float(required=True)
    lnd_median = fields.Float(required=True)
    energy_per_delivered_bit_mean = fields.Float(
        required=True, allow_none=True
    )
    delivered_mean = fields.Float(required=True)


class NodeSweepSchema(Schema):
    """Milestones for every node count of a sweep."""

    scenario = fields.Dict(required=True)
    rows = fields.List(
        fields.Nested(NodeCountMilestonesSchema), required=True
    )


class NodeSweepDocumentSchema(StandardResponseSchema):
    """Wrap a node-count sweep in the standard envelope."""

    data = fields.Nested(NodeSweepSchema, required=True)


NODE_SWEEP_CSV_COLUMNS = [
    "node_count",
    "protocol",
    "runs",
    "fnd_median",
    "hnd_median",
    "lnd_median",
    "energy_per_delivered_bit_mean",
    "delivered_mean",
]
