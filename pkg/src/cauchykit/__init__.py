"""Fast solvers for Cauchy-like linear systems and Trummer-like matrices."""

from .core import (CauchyLikeGenerators, NodeCollision, NodeMismatch,
                   NonInjectiveNodes, OpCounter, SingularMatrix, SolveReport,
                   StreamingSinkError, TrummerMatrix, cauchy_matvec,
                   dense_inverse_oracle, dense_lu_oracle, dense_solve_oracle,
                   reconstruct_dense, reconstruct_entry, singularity_witness,
                   trummer_reconstruct_dense, validate)
from .bench import (BenchRecord, InvertRecord, run_bench, run_invert_bench,
                    sweep_records, write_csv)
from .gko_dense import LUFactors, lu_factor, solve_implicit_l
from .gko_downdate import solve_downdating, solve_downdating_streaming
from .gko_extended import extended_block_probe, solve_extended
from .problems import Problem, ProblemSpec, generate_problem
from .toeplitz_bridge import (ToeplitzCauchyMap, ToeplitzOperator,
                              gaussian_toeplitz, toeplitz_to_cauchy)
from .trummer import (TrummerInverseResult, displacement_of_inverse_check,
                      trummer_add, trummer_invert, trummer_matvec,
                      trummer_mul, trummer_solve)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
