"""findep: exact computation and simulation of finitely dependent proper
colorings of cycles and lines.

The package computes the insertion-count recurrences behind a family of
stationary finitely dependent proper q-colorings, materializes their exact
laws as rational distributions, samples them by necklace insertion and by
Eden growth on the 3-regular tree, and verifies the defining identities by
exact arithmetic plus statistically tested Monte Carlo.
"""

from .analysis import (
    GofReport,
    are_independent,
    chi_square_gof,
    k_dependence_counterexample,
    marginalize,
    pushforward,
    symmetry_check,
    tv_distance,
    verify_k_dependence,
)
from .chains import (
    BinaryState,
    ChainVariant,
    IotaStatReport,
    bit_descent_law,
    bit_descent_window_law,
    chain_law,
    color_indicator,
    descent_law,
    descent_window_law,
    initial_law,
    iota_text,
    iota_two_site_statistic,
    j_kernel,
    kernel_equal,
    peak_law,
    peak_window_law,
    q_kernel,
)
from .dist import ExactDist, Kernel, state_text
from .errors import BudgetExceeded
from .growth import (
    EdenState,
    RngStream,
    coupling_kernel,
    eden_init,
    eden_read,
    eden_sample,
    eden_state_json,
    eden_step,
    eden_vs_necklace_kernel_check,
    insert_with_rotation,
    necklace_sample,
    validate_eden_state,
)
from .recurrence import (
    DEFAULT_BUDGET,
    THEOREM_GRADE,
    b_circ,
    b_circ_mobius,
    b_vec,
    cycle_law,
    is_theorem_grade,
    line_window_law,
    restriction_sum,
    z_circ,
    z_circ_closed,
    z_vec,
)
from .words import (
    Word,
    apply_color_perm,
    delete_at,
    is_cyclically_proper,
    is_proper,
    reflect,
    rotate,
)

__version__ = "0.1.0"

__all__ = [
    "BinaryState",
    "BudgetExceeded",
    "ChainVariant",
    "DEFAULT_BUDGET",
    "EdenState",
    "ExactDist",
    "GofReport",
    "IotaStatReport",
    "Kernel",
    "RngStream",
    "THEOREM_GRADE",
    "Word",
    "apply_color_perm",
    "are_independent",
    "b_circ",
    "b_circ_mobius",
    "b_vec",
    "bit_descent_law",
    "bit_descent_window_law",
    "chain_law",
    "chi_square_gof",
    "color_indicator",
    "coupling_kernel",
    "cycle_law",
    "delete_at",
    "descent_law",
    "descent_window_law",
    "eden_init",
    "eden_read",
    "eden_sample",
    "eden_state_json",
    "eden_step",
    "eden_vs_necklace_kernel_check",
    "initial_law",
    "insert_with_rotation",
    "iota_text",
    "iota_two_site_statistic",
    "is_cyclically_proper",
    "is_proper",
    "is_theorem_grade",
    "j_kernel",
    "k_dependence_counterexample",
    "kernel_equal",
    "line_window_law",
    "marginalize",
    "necklace_sample",
    "peak_law",
    "peak_window_law",
    "pushforward",
    "q_kernel",
    "reflect",
    "restriction_sum",
    "rotate",
    "state_text",
    "symmetry_check",
    "tv_distance",
    "validate_eden_state",
    "verify_k_dependence",
    "z_circ",
    "z_circ_closed",
    "z_vec",
]
