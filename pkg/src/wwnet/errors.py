"""Exception taxonomy for graph validation, generation, and experiment plumbing."""


class WwnetError(Exception):
    """Base class for all package errors."""


class InvalidParams(WwnetError):
    """Parameter set violates a documented precondition."""


class DuplicateLink(WwnetError):
    """A node pair appears more than once in the link list (any kind)."""


class LayerViolation(WwnetError):
    """Link kind or node position is inconsistent with the node taxonomy."""


class Disconnected(WwnetError):
    """The graph is not connected as a whole."""


class NonpositiveCapacity(WwnetError):
    """A node capacity is zero or negative."""


class UnknownNode(WwnetError):
    """A queried node id does not exist in the graph."""


class ConnectivityRetriesExhausted(WwnetError):
    """Geometric layer regeneration never produced a connected graph."""


class TooManyInterfaces(WwnetError):
    """Requested more interfacing pairs than either layer can supply."""


class MergeCreatedDuplicateLink(WwnetError):
    """Every retried pairing produced a wired+wireless parallel link."""


class OutOfBounds(WwnetError):
    """A placement point lies outside the unit square."""


class NotEnoughNodes(WwnetError):
    """Fewer candidate nodes than placement targets."""


class NoWirelessPairs(WwnetError):
    """Graph has fewer than two non-interfacing wireless nodes."""


class InsufficientRecords(WwnetError):
    """Ensemble statistics need at least two records."""


class NoConvergence(WwnetError):
    """Threshold bisection failed to bracket the congestion transition."""


class InvalidConfig(WwnetError):
    """Simulation or experiment configuration is invalid."""


class ConfigError(WwnetError):
    """Experiment config file could not be parsed or resolved."""


class FormatError(WwnetError):
    """A serialized graph/weights/points file is malformed."""
