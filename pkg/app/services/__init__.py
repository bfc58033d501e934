# Exporta as operações principais para importação mais fácil
from .specfun import (
    bessel_j,
    anger_j,
    rational_period_integral
)
from .rate_service import (
    mirror_rate,
    free_space_rate,
    cavity_rate,
    allowed_sidebands,
    sideband_rate,
    small_amplitude_rate
)
from .oracle_service import (
    one_period_amplitude,
    verify_selection_rule,
    general_trajectory_spectrum,
    run_selection_rule_suite,
    run_equivalence_suite
)