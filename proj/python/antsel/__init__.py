"""OMP-based receive antenna selection for massive MIMO uplinks."""

from ._core import (
    AntselError,
    BerRecord,
    CorrelationModel,
    RngStream,
    Scheme,
    SelectionProblem,
    SelectionVector,
    SimPoint,
    analytic_mrc_ber,
    apply_correlation,
    bpsk_detect,
    bpsk_modulate,
    build_correlation,
    build_problem,
    cholesky,
    combine_mrc,
    combine_selection,
    corrupt_estimate,
    exhaustive_select,
    forward_solve,
    format_csv,
    hermitian_sqrt,
    ls_solve,
    measure_omp_runtime,
    mse_direct,
    mse_factored,
    omp_select,
    receive,
    run_point,
    run_sweep,
    sample_iid_channel,
    sample_noise,
    sample_realization,
    write_csv,
    __version__,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
