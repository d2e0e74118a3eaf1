"""Exception types shared across the library."""


class SpanlabError(Exception):
    """Base class for all library errors."""


class InvalidParamsError(SpanlabError):
    """Generator or operation parameters are out of range."""


class CapExceededError(SpanlabError):
    """All-pairs computation requested above the configured audit cap."""


class VertexSetMismatchError(SpanlabError):
    """Two graphs that must share a vertex set do not."""


class NotSubgraphError(SpanlabError):
    """A graph required to be a subgraph contains a foreign edge."""


class UndershootError(SpanlabError):
    """An emulator reported a distance below the true graph distance."""


class DisconnectedPairError(SpanlabError):
    """A pair reachable in the reference graph is unreachable in the candidate."""


class UnreachableError(SpanlabError):
    """A requested path endpoint pair is not connected."""


class InvalidEpsError(SpanlabError):
    """Cluster decomposition called with eps outside (0, 1)."""


class InvalidConfigError(SpanlabError):
    """Emulator or spanner configuration violates its invariants."""


class InvalidAlphaError(SpanlabError):
    """Radius exponent parameter outside (0, 1)."""


class NonterminationGuardError(SpanlabError):
    """Greedy phase exceeded its defensive round limit."""


class TooSparseError(SpanlabError):
    """Integer annulus holds no lattice point for the requested radius."""


class InfeasibleStripesError(SpanlabError):
    """Requested stripe layout cannot be carved from the vector set."""


class SpecViolationError(SpanlabError):
    """Base-graph parameters violate a construction precondition."""


class DivisibilityViolationError(SpecViolationError):
    """Inner-graph width is incompatible with the canonical vector steps."""


class NonIntegralZError(SpanlabError):
    """Subdivision length |V_I|/|P_I| is not an integer."""


class CardinalityMismatchError(SpanlabError):
    """Stripe/pair counts cannot be matched into a bijection."""


class PortCollisionError(SpanlabError):
    """Two outer edges wired to the same port slot (defensive; impossible)."""


class PairDisconnectedError(SpanlabError):
    """Deletion experiment disconnected the observed pair."""
