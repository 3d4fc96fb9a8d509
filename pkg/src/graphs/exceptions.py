class GraphConstructionError(ValueError):
    """Raised when an edge description cannot be turned into a graph edge."""


class InvalidCutError(ValueError):
    """Raised for an empty or full vertex set used as a cut side."""


class DisconnectedGraphError(ValueError):
    """Raised when an operation needs a connected (support) graph."""


class NotKEdgeConnectedError(ValueError):
    """Raised when a subgraph is less than k-edge-connected."""
