"""One-shot zero-forcing DoF toolkit for banded interference networks with
transmitter cooperation: topology generation, transmit-set assignments and
pruning, beam design and verification, cluster schemes, reconstruction-based
upper-bound certificates, and exhaustive desk-scale oracles."""

__version__ = "0.1.0"

from .assignments import (
    Assignment,
    UsefulnessGraph,
    baseline_assignment,
    candidate_range,
    check_local_cooperation,
    cooperation_order,
    deserialize_assignment,
    make_assignment,
    prune_useless,
    serialize_assignment,
    shares_receiver,
    usefulness_graph,
)
from .cluster_scheme import cluster_plan, scheme_dof
from .converse import (
    Certificate,
    PropagationResult,
    build_certificate,
    certificate_receivers,
    check_certificate,
    guaranteed_free,
    propagate,
    upper_bound,
)
from .errors import (
    Disconnected,
    IndexOutOfRange,
    Infeasible,
    InvalidDimensions,
    ParseError,
    TooLarge,
)
from .net_model import (
    KINDS,
    LOCALLY_CONNECTED,
    WYNER_ASYMMETRIC,
    Network,
    build_network,
    deserialize_network,
    receivers_of,
    serialize_network,
    support_pairs,
    transmitters_of,
)
from .search_oracle import (
    SearchResult,
    brute_force_zf_dof,
    message_feasible,
    restricted_zf_dof,
    template_search,
)
from .zf_precoder import (
    BeamDesign,
    ReceiverReport,
    SchemePlan,
    VerifyReport,
    count_zf_dof,
    deserialize_plan,
    design_all,
    design_beam,
    effective_gain,
    receivers_reached,
    serialize_plan,
    verify,
)
