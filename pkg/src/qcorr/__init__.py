"""Joint qubit observables and the split of their correlations into classical and quantum parts."""

from .correlation import (
    CorrelationTable,
    classical_correlation,
    is_quantum_correlated,
    product_rule_check,
    quantum_correlation,
    total_correlation,
)
from .observables import (
    DiscreteObservable,
    OutcomeGrid,
    SpinAxis,
    comeasurable,
    embed,
    local_joint,
    marginal,
    spin_half,
)
from .probability import (
    ProbabilityTable,
    marginal_table,
    marginal_tables,
    measure,
    product_table,
    sum_table,
)
from .scenarios import RunReport, Scenario, builtin_scenarios, evaluate, run
from .states import (
    DensityOperator,
    PureState,
    StateDecomposition,
    basis_state,
    density_of,
    ket,
    make_bell,
    make_ghz,
    make_w,
    reduce,
)
from .tensor import (
    DimensionError,
    DimensionProfile,
    is_projection,
    kron,
    partial_trace,
    trace,
)

__version__ = "0.1.0"
