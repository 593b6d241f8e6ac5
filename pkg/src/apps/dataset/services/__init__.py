from apps.dataset.services.bench import bench, bench_scene, parse_sizes
from apps.dataset.services.evaluation import (
    EvaluationService,
    aggregate_rows,
    evaluate,
    filter_for,
    write_report_csv,
)
from apps.dataset.services.index import (
    load_triplet,
    scan_dataset,
    write_index,
    write_triplet,
)
from apps.dataset.services.probe import (
    bias_probe,
    probe_frame,
    probe_item,
    write_probe_csv,
)

__all__ = [
    "EvaluationService",
    "aggregate_rows",
    "bench",
    "bench_scene",
    "bias_probe",
    "evaluate",
    "filter_for",
    "load_triplet",
    "parse_sizes",
    "probe_frame",
    "probe_item",
    "scan_dataset",
    "write_index",
    "write_probe_csv",
    "write_report_csv",
    "write_triplet",
]
