"""Radio model constants."""

import math
from dataclasses import asdict, dataclass

from wsnsim.error_handlers import InvalidConfig


@dataclass(frozen=True)
class RadioParams:
    """
    Constants of the first-order radio model.

    Defaults are the values conventionally used in LEACH-family studies:
    50 nJ/bit electronics, 10 pJ/bit/m^2 free-space and 0.0013 pJ/bit/m^4
    multipath amplifiers, 5 nJ/bit/signal aggregation, 4000-bit data and
    200-bit control packets, 0.5 J per node.
    """

    e_elec: float = 50e-9
    eps_fs: float = 10e-12
    eps_mp: float = 0.0013e-12
    e_da: float = 5e-9
    data_bits: int = 4000
    ctrl_bits: int = 200
    e_init: float = 0.5

    def __post_init__(self):
        """Check every constant is usable by the cost formulas."""
        for name, value in asdict(self).items():
            if not math.isfinite(value):
                raise InvalidConfig(
                    f"radio.{name} must be finite", key=f"radio.{name}"
                )
            # A zero budget is allowed: every node dies in the first round.
            if name == "e_init":
                if value < 0:
                    raise InvalidConfig(
                        "radio.e_init must be at least 0", key="radio.e_init"
                    )
            elif value <= 0:
                raise InvalidConfig(
                    f"radio.{name} must be greater than 0",
                    key=f"radio.{name}",
                )

    @property
    def d0(self) -> float:
        """Crossover distance between the free-space and multipath branches."""
        return math.sqrt(self.eps_fs / self.eps_mp)
