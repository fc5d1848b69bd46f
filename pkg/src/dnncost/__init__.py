"""Static cost, memory and arithmetic-intensity analysis for DNN graphs.

The library models a network as a DAG of typed layer nodes, infers every
feature-map shape from the input resolution, and derives parameter,
activation and multiply-accumulate counts plus liveness-based memory
footprints from those shapes alone. A small zoo of classic image-network
builders and a measurement-correlation toolkit sit on top.
"""

from .costs import (
    Convention,
    CostError,
    FactorizationDelta,
    LayerCost,
    ModelCost,
    RatioMetrics,
    derived_ratios,
    factorization_compare,
    layer_activations,
    layer_macs,
    layer_params,
    model_cost,
)
from .graph import (
    CycleError,
    DuplicateNodeError,
    Graph,
    GraphError,
    GraphValidationError,
    Kind,
    LayerSpec,
    TensorShape,
    UnknownNodeError,
    conv2d,
    fully_connected,
    input_spec,
    pool,
    simple,
)
from .io import (
    MeasurementError,
    ModelFileError,
    dumps_model,
    load_model,
    parse_measurements_csv,
    parse_model,
    save_model,
)
from .memory import (
    MemoryEstimate,
    footprint,
    footprint_vs_batch,
    liveness_peak,
)
from .report import AnalysisOptions, ModelReport, analyze, render, resolve_model
from .shapes import ShapeAnnotation, ShapeError, infer_graph, infer_node
from .stats import (
    CorrelationEntry,
    CorrelationReport,
    MachineSpec,
    MeasurementRecord,
    ModelMetrics,
    RooflineResult,
    StatsError,
    correlation_suite,
    footprint_to_modelsize_ratio,
    ppmcc,
    roofline_classify,
)

__version__ = "1.0.0"

__all__ = [
    "AnalysisOptions",
    "Convention",
    "CorrelationEntry",
    "CorrelationReport",
    "CostError",
    "CycleError",
    "DuplicateNodeError",
    "FactorizationDelta",
    "Graph",
    "GraphError",
    "GraphValidationError",
    "Kind",
    "LayerCost",
    "LayerSpec",
    "MachineSpec",
    "MeasurementError",
    "MeasurementRecord",
    "MemoryEstimate",
    "ModelCost",
    "ModelFileError",
    "ModelMetrics",
    "ModelReport",
    "RatioMetrics",
    "RooflineResult",
    "ShapeAnnotation",
    "ShapeError",
    "StatsError",
    "TensorShape",
    "UnknownNodeError",
    "analyze",
    "conv2d",
    "correlation_suite",
    "derived_ratios",
    "dumps_model",
    "factorization_compare",
    "footprint",
    "footprint_to_modelsize_ratio",
    "footprint_vs_batch",
    "fully_connected",
    "infer_graph",
    "infer_node",
    "input_spec",
    "layer_activations",
    "layer_macs",
    "layer_params",
    "liveness_peak",
    "load_model",
    "model_cost",
    "parse_measurements_csv",
    "parse_model",
    "pool",
    "ppmcc",
    "render",
    "resolve_model",
    "roofline_classify",
    "save_model",
    "simple",
]
