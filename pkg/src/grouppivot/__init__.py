"""Group inverses of block matrices and pseudo principal pivot transforms."""

from .block import (
    BlockMatrix,
    HypothesisReport,
    HypothesisViolated,
    block_group_inverse,
    block_group_inverse_complementary,
    check_hypotheses,
    complementary_schur,
    pseudo_schur,
    verify_group_inverse,
)
from .core import COMPOSITE_TOL, DEFAULT_TOL, Tolerance, UsageError, conjugate_transpose, mat_approx_eq, numerical_rank
from .geninv import NoGroupInverse, group_inverse, has_index_at_most_one, moore_penrose, range_included
from .gen import InstanceSpec, random_index1, theorem1_instance, theorem1_violating_instance
from .ppt import cpppt, pppt
