"""Pegg-Barnett truncated oscillator algebra: su(s+1) closure, SUSY doublets, lepton masses."""
from .closure import (
    LieClosureResult,
    group_element_check,
    hermitian_seeds,
    lie_closure,
    structure_constants,
)
from .errors import ClosureViolationError, DomainError, NonConvergenceError, ShapeError
from .gellmann import (
    GellMannBasis,
    NamedGenerators,
    build_named_generators,
    reconstruct_gellmann_s2,
    standard_gellmann_basis,
    verify_generator_relations,
)
from .lepton import MassModel, MassTable, build_mass_table, predicted_mass_ratio
from .linalg import (
    SpanBasis,
    anticommutator,
    build_span_basis,
    commutator,
    hs_inner,
    matrix_exponential_hermitian,
    project_residual,
)
from .oscillator import (
    PBOperators,
    PhaseState,
    bosonic_limit_window,
    build_pb_operators,
    phase_overlap,
    phase_state,
)
from .susy import (
    DoubletSubspace,
    JCHamiltonian,
    SusySet,
    build_jc_hamiltonian,
    build_susy_hamiltonian,
    build_susy_set,
    doublet_spectrum,
    verify_quasialgebra,
    verify_susy_algebra,
)

__version__ = "0.1.0"
