"""High-precision toolkit for regular quantum-group-invariant Yang-Baxter
R-matrices: spectral decompositions, transition matrices, verification,
classification and Hamiltonian reconstruction for spins up to 3."""

from .qarith import QContext, QScalar, kappa, q_brace, q_factorial, q_number, qcontext
from .repspace import Spin, highest_weight_basis, index_range, permutation, projectors, spin_generators
from .transition import TransitionMatrix, six_j, transition_matrix, transition_matrix_oracle

__version__ = "0.1.0"

__all__ = [
    "QContext", "QScalar", "qcontext", "q_number", "q_brace", "q_factorial", "kappa",
    "Spin", "spin_generators", "projectors", "permutation", "highest_weight_basis",
    "index_range", "TransitionMatrix", "six_j", "transition_matrix",
    "transition_matrix_oracle", "__version__",
]
