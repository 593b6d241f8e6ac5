SOMETHING_WENT_WRONG = "Something went wrong!"

USAGE_ERROR = "Invalid usage"

DATA_ERROR = "Invalid input data"

NON_FINITE_INPUT = "Input contains non-finite values"

NOT_POSITIVE_SEMIDEFINITE = "Matrix is not positive semidefinite"

SINGULAR_COVARIANCE = "Covariance is singular; increase the ridge eps"

WRONG_SHAPE = "Unexpected array shape"
