# Statistics
MIN_REGION_PIXELS = 16
PSD_TOLERANCE = 1e-9
SINGULAR_FLOOR = 1e-12

# Filters
FILTER_PARAMS = 12
BINARY_FILTER_SUFFIX = ".mklf"
FILTER_JSON_FORMAT = ".16e"  # 17 significant digits

# Metrics (0-255 scale)
PIXEL_SCALE = 255.0
PSNR_CAP_DB = 100.0
PSNR_CAP_MSE_RATIO = 1e-10

# Predictor
HISTOGRAM_BINS = 8
FEATURE_DIM = 67
HIDDEN_SIZES = (64, 64)
MODEL_VERSION = "mklp-1"
VALIDATION_FRACTION = 0.1
CONTENT_PIXELS = 4096

# Benchmarks
DEFAULT_BENCH_SIZES = ((256, 256), (512, 512), (1024, 2048), (4096, 4096))
DEFAULT_SYNTH_COUNT = 200
DEFAULT_SYNTH_SIZE = 256
APPLY_TILE_ROWS = 256
