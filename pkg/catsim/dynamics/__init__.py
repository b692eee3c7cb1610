"""Time evolution, cat-state protocol and certification observables."""

from catsim.dynamics.evolve import (  # noqa: F401
    TrajectoryRecord,
    analytic_propagator,
    analytic_state,
    evolve_numeric,
    initial_state,
)
from catsim.dynamics.observables import Observables, mean_number, motional_parity, observables  # noqa: F401
from catsim.dynamics.protocol import (  # noqa: F401
    CatBranch,
    CatState,
    CollapseResult,
    NormalizationMode,
    apply_pulse_v,
    cat_state,
    collapse_measure,
    outcome_probabilities,
)
from catsim.dynamics.validation import ValidationReport, validation_run  # noqa: F401
from catsim.dynamics.wigner import WignerField, WignerGrid, wigner_grid, wigner_value  # noqa: F401
