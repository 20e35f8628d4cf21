from .exact import (
    NO_SOLUTION,
    RowReducer,
    SparseMatrix,
    dense_rank,
    in_span,
    quotient_data,
    quotient_dimension,
    rank,
    rank_and_kernel,
    row_echelon,
    solve_linear,
)
from .numeric import check_irrational, numeric_rank
