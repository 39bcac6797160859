"""Exception types shared across the simulator."""


class SimulatorError(Exception):
    """Base class for all errors raised by this package."""


class ShapeError(SimulatorError):
    """Dimension mismatch between states or operators."""


class CapacityError(SimulatorError):
    """Requested object exceeds the configured qubit/memory cap."""


class DomainError(SimulatorError):
    """Argument outside its valid range."""


class PromiseError(SimulatorError):
    """Oracle construction that cannot satisfy the 2-to-1 promise."""


class IntegrationError(SimulatorError):
    """Time evolution lost unitarity beyond tolerance."""


class ResampleError(SimulatorError):
    """Sampled a measurement branch whose probability underflowed to zero."""


class ContradictionError(SimulatorError):
    """GF(2) system has full rank, which the xor-mask promise forbids."""
