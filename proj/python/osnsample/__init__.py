"""Random node sampling of directed social graphs under a simulated API budget."""

from ._core import (
    ApiConfig,
    ApiSimulator,
    BudgetError,
    DirectedGraph,
    Distribution,
    Error,
    GeneratorSpec,
    IoError,
    ParameterError,
    ValidationError,
    compute_properties,
    generate,
    load_edge_list,
    pareto_check,
    relative_error,
    sample,
    save_edge_list,
)

__all__ = [
    "ApiConfig",
    "ApiSimulator",
    "BudgetError",
    "DirectedGraph",
    "Distribution",
    "Error",
    "GeneratorSpec",
    "IoError",
    "ParameterError",
    "ValidationError",
    "compute_properties",
    "generate",
    "load_edge_list",
    "pareto_check",
    "relative_error",
    "sample",
    "save_edge_list",
]
