"""Exception types raised across the package."""


class WefHouseError(Exception):
    """Base class for all errors raised by this package."""


# -- instance and outcome validation ---------------------------------------

class MalformedNumber(WefHouseError):
    """A value could not be parsed as an exact rational."""


class MalformedInstance(WefHouseError):
    """Instance data is structurally unusable (missing or mistyped fields)."""


class NonPositiveWeight(WefHouseError):
    """An agent weight is zero or negative."""


class NegativeUtility(WefHouseError):
    """A utility value is negative."""


class TooFewHouses(WefHouseError):
    """Fewer houses than agents."""


class DimensionMismatch(WefHouseError):
    """Row lengths, label counts, or vector lengths disagree."""


class InvalidAllocation(WefHouseError):
    """An allocation repeats a house, has the wrong length, or is out of range."""


class NegativeSubsidy(WefHouseError):
    """A subsidy payment is negative."""


# -- solver preconditions ---------------------------------------------------

class EmptyAssignmentSet(WefHouseError):
    """A top-set query was made against an empty assignment pool."""


class MatchingSaturating(WefHouseError):
    """A Hall violator was requested although the matching covers every agent."""


# -- envy graph -------------------------------------------------------------

class NotWefable(WefHouseError):
    """No subsidy vector can make the allocation weighted envy-free."""


# -- special-case solvers ---------------------------------------------------

class NotIdenticalUtilities(WefHouseError):
    """Agents do not share a single utility function."""


class InconsistentPartition(WefHouseError):
    """A two-type partition does not match the instance."""


class NotBivalued(WefHouseError):
    """Utilities are not drawn from a single pair {low, 1} with low < 1."""


class NotSquare(WefHouseError):
    """The instance does not have exactly one house per agent."""


class NotNormalized(WefHouseError):
    """Agent utilities do not sum to one."""


class NotTwoAgents(WefHouseError):
    """The operation is defined only for two agents."""


class SearchFailed(WefHouseError):
    """A search that must succeed on valid input found nothing; input or code is wrong."""


class NotUnweighted(WefHouseError):
    """Agent weights are not all equal."""


# -- oracle -----------------------------------------------------------------

class CapExceeded(WefHouseError):
    """A brute-force enumeration would exceed its configured cap."""


# -- command line -----------------------------------------------------------

class ModeMismatch(WefHouseError):
    """The instance does not satisfy the declared special-case mode."""
