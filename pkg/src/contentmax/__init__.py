"""Content sums of pattern copies in exactly-labeled digraphs."""

from .bounds import (
    balanced_exchange,
    bound_report,
    elementary_symmetric,
    path_bound_int,
    path_bound_real,
    star_bound_int,
    star_sup_real,
)
from .graph import (
    GraphError,
    LabeledDigraph,
    LabeledMatrix,
    content,
    exclusive_content,
    from_adjacency,
    is_dag,
    is_nilpotent,
    mat_pow,
    mat_weight,
    to_adjacency,
    topological_order,
    weight,
)
from .optimizer import MergeError, find_uncovered_pair, merge_step, optimize, sigma
from .patterns import (
    Copy,
    Pattern,
    PatternError,
    ct_E,
    enumerate_copies,
    make_pattern,
    parse_pattern_spec,
    path_ct_via_matrix,
    satisfies_coverage,
)

__version__ = "0.1.0"
