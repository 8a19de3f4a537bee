"""Compile planning tasks into labeled graphs and manage runtime datasets.

Two graph families are produced: grounded graphs built from translated
SAS tasks, and lifted graphs built from the abstract structure of PDDL
domain/problem pairs. On top of those sit corpus statistics, runtime
label handling, split management, and portfolio-selection scoring.
"""

from .dataset import (CENSORED_RUNTIME, DEFAULT_TIMEOUT, PLANNER_COUNT,
                      LabelTable, PredictionTable, SelectionResult,
                      SplitSpec, TargetTable, binarize_targets,
                      evaluate_selection, labels_to_csv, load_labels,
                      load_predictions, load_targets, make_split,
                      make_splits, predictions_to_csv, select_planner,
                      split_from_json, split_to_json, targets_to_csv)
from .errors import (ConsistencyError, CycleError, DimensionError,
                     EmptyCorpus, FormatError, InfeasibleRatio, InputError,
                     InternalError, LexError, MissingPrediction, ParseError,
                     PlanGraphError, RangeError, SchemaError, SharingOverflow,
                     ValidationError)
from .graph import (GROUNDED_FAMILY, KIND_VOCABULARIES, LIFTED_FAMILY,
                    TypedDigraph, UndirectedView, deserialize, graph_path,
                    graphs_equal, make_graph, one_hot_features, read_graph,
                    serialize, undirected_view, write_graph)
from .grounded import build_grounded_graph, grounded_node_count
from .lifted import DEFAULT_STRUCTURE_CAP, assert_acyclic, build_lifted_graph
from .pddl import (PddlDocument, parse_pddl, print_domain, print_problem,
                   to_abstract_structure)
from .sas import (Effect, GroundAxiom, GroundOperator, SasTask, Variable,
                  parse_sas)
from .stats import (DEFAULT_DIAMETER_CAP, CorpusStats, GraphStats,
                    SizeDistribution, connected_component_count,
                    corpus_stats, graph_stats, sample_stds,
                    size_distribution, size_quantiles, undirected_diameter)
from .structures import (SYMBOL_TYPES, SetStruct, Structure, Symbol,
                         TupleStruct, structure_size)

__version__ = "0.1.0"

__all__ = [
    "CENSORED_RUNTIME", "ConsistencyError", "CorpusStats", "CycleError",
    "DEFAULT_DIAMETER_CAP", "DEFAULT_STRUCTURE_CAP", "DEFAULT_TIMEOUT",
    "DimensionError", "Effect", "EmptyCorpus", "FormatError",
    "GROUNDED_FAMILY", "GraphStats", "GroundAxiom", "GroundOperator",
    "InfeasibleRatio", "InputError", "InternalError", "KIND_VOCABULARIES",
    "LIFTED_FAMILY", "LabelTable", "LexError", "MissingPrediction",
    "PLANNER_COUNT", "ParseError", "PddlDocument", "PlanGraphError",
    "PredictionTable", "RangeError", "SYMBOL_TYPES", "SasTask", "SchemaError",
    "SelectionResult", "SetStruct", "SharingOverflow", "SizeDistribution",
    "SplitSpec", "Structure", "Symbol", "TargetTable", "TupleStruct",
    "TypedDigraph", "UndirectedView", "ValidationError", "Variable",
    "assert_acyclic", "binarize_targets", "build_grounded_graph",
    "build_lifted_graph", "connected_component_count", "corpus_stats",
    "deserialize", "evaluate_selection", "graph_path", "graph_stats",
    "graphs_equal", "grounded_node_count", "labels_to_csv", "load_labels",
    "load_predictions", "load_targets", "make_graph", "make_split",
    "make_splits", "one_hot_features", "parse_pddl", "parse_sas",
    "predictions_to_csv", "print_domain", "print_problem", "read_graph",
    "sample_stds", "select_planner", "serialize", "size_distribution",
    "size_quantiles", "split_from_json", "split_to_json", "structure_size",
    "targets_to_csv", "to_abstract_structure", "undirected_diameter",
    "undirected_view", "write_graph",
]
