"""Spanning sets of O(n)/SO(n)/Sp(n)-equivariant linear maps between tensor
power spaces, constructed from pairing-diagram combinatorics, with numerical
verification against an independent constraint-based oracle."""

from .diagrams import (
    BrauerDiagram,
    GroodDiagram,
    count_brauer,
    count_grood,
    enumerate_brauer,
    enumerate_grood,
    parse_diagram,
)
from .groups import (
    GroupElement,
    LieGenerator,
    component_reps,
    lie_basis,
    omega,
    sample,
    tensor_power_apply,
)
from .layers import (
    LayerSpec,
    SpanElement,
    SpanningSet,
    assemble_layer,
    bias_set,
    export_json,
    forward,
    load_spanning_set,
    local_spanning_set,
    spanning_set,
    with_features,
)
from .spanmat import (
    SparseEquivariantMatrix,
    SymplecticIndex,
    build_E,
    build_F,
    build_H,
    chi,
    epsilon,
    flatten_index,
    unflatten_index,
)
from .verify import (
    DimensionReport,
    VerificationReport,
    check_equivariance,
    check_equivariance_product,
    dims_table,
    exact_integer_rank,
    oracle_dimension,
    span_rank,
)

__version__ = "0.1.0"
