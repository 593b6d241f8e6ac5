from enum import IntEnum, StrEnum


class ExitCode(IntEnum):
    """Process exit codes of the command-line front-end."""

    SUCCESS = 0
    USAGE_ERROR = 1
    DATA_ERROR = 2


class HarmonizationMethod(StrEnum):
    """This class represents the ways a filter can be obtained for a composite."""

    IDEAL = "ideal"
    CT = "ct"
    PREDICTOR = "predictor"
    IDENTITY = "identity"


class LossNorm(StrEnum):
    """Norm of the labels loss term."""

    L1 = "l1"
    L2 = "l2"


class Parameterization(StrEnum):
    """
    What the predictor regresses.

    - FILTER: the 12 filter parameters [A, S] directly.
    - STATS: residuals of the target statistics [Sigma_1, mu_1] over the composite
      foreground statistics, turned into a filter by the closed-form fit.
    """

    FILTER = "filter"
    STATS = "stats"


class OptimizerType(StrEnum):
    """Enum class of optimizer type"""

    ADAM = "adam"
    SGD = "sgd"


class ScheduleType(StrEnum):
    """Enum class of learning-rate schedule type"""

    STAGED = "staged"
    CONSTANT = "constant"


class Split(StrEnum):
    """Enum class of dataset split tags"""

    TRAIN = "train"
    TEST = "test"
    ALL = "all"
