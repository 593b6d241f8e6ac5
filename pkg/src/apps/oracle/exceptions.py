from apps.oracle.constants import OracleErrorMessage
from core.exceptions import DataError


class MissingGroundTruth(DataError):
    """Triplet has no real image."""

    message = OracleErrorMessage.MISSING_GROUND_TRUTH
