"""Transmit, receive and aggregation costs of the first-order radio model."""

from wsnsim.energy.models import RadioParams
from wsnsim.error_handlers import InvalidArgument


def tx_cost(bits: int, d: float, p: RadioParams) -> float:
    """
    Energy in joules to send ``bits`` over ``d`` meters.

    Below the crossover distance the amplifier term grows with d^2,
    at or above it with d^4; both branches agree at d0.

    Raises:
        InvalidArgument: If ``bits`` or ``d`` is negative.
    """
    if bits < 0 or d < 0:
        raise InvalidArgument(
            f"tx_cost needs non-negative bits and distance, got "
            f"bits={bits}, d={d}"
        )
    if d < p.d0:
        return bits * p.e_elec + bits * p.eps_fs * d * d
    return bits * p.e_elec + bits * p.eps_mp * d**4


def rx_cost(bits: int, p: RadioParams) -> float:
    """Energy in joules to receive ``bits``."""
    if bits < 0:
        raise InvalidArgument(f"rx_cost needs non-negative bits, got {bits}")
    return bits * p.e_elec


def aggregate_cost(bits: int, n_signals: int, p: RadioParams) -> float:
    """
    Energy in joules to fuse ``n_signals`` packets of ``bits`` each.

    A head fusing k member packets plus its own reading pays for k + 1
    signals and emits a single packet.
    """
    if bits < 0 or n_signals < 0:
        raise InvalidArgument(
            f"aggregate_cost needs non-negative inputs, got bits={bits}, "
            f"n_signals={n_signals}"
        )
    return n_signals * bits * p.e_da
