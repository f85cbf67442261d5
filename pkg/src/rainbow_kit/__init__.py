"""Rainbow connection toolkit: verifier, exact oracle and constructive colourers."""
from .colourers import (ALGORITHMS, BoundReport, PreconditionError, colour_chordal,
                        colour_epsilon, colour_girth_pipeline, colour_kappa_pipeline,
                        colour_spanning_tree, colour_two_connected, colour_with, run_algorithm)
from .colouring import (EdgeColouring, RainbowCertificate, RcResult, SearchBudget, rc_bounds,
                        rc_exact, spanning_tree_colouring, verify_rainbow_connected)
from .dominating import (DominatingSet, GrowthParams, dominate_and_colour,
                         extend_colouring_one_step, grow_2l_step_dominating,
                         grow_girth_dominating)
from .ears import (BalancedColouringSpec, Ear, EarClassification, classify_ear,
                   colour_even_ear, colour_odd_ear, find_largest_ear)
from .experiment import ExperimentConfig, export_dot, run_experiment
from .generators import FamilySpec, gen_family, layered_tight, named
from .graph import Graph, GraphError, NotConnectedError, VertexSet, load_graph
from .metrics import GraphMetrics, compute_metrics, is_chordal

__version__ = "0.1.0"
