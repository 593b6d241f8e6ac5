from enum import StrEnum


class FilterFileFormat(StrEnum):
    """On-disk filter encodings, chosen by file extension."""

    JSON = "json"
    BINARY = "binary"


class TransportErrorMessage(StrEnum):
    PARSE_ERROR = "Malformed filter file"
    WRONG_ARITY = "Filter needs exactly 12 parameters"
    INVALID_BETA = "EMA beta must be in [0, 1)"
    EMPTY_SEQUENCE = "Filter sequence is empty"


class TransportMessage(StrEnum):
    FILTER_SAVED = "Filter saved"
    IMAGE_SAVED = "Harmonized image saved"
    SEQUENCE_SAVED = "Smoothed sequence saved"
