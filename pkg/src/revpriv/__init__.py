"""Revealed-preference tests for consumers who care what their choices reveal.

Each preference model gets a decision procedure that returns either a
witness (an order or a utility model that reproduces the data) or a
certificate that none exists.
"""

from .additive import (
    AdditiveModel,
    additive_rationalizable,
    build_inequality_system,
    build_ry,
    generate_additive,
    replay_choices,
    ry_acyclic_all,
    verify_additive_witness,
)
from .core import (
    ChoiceProblem,
    Observation,
    classic_rationalizable,
    dump_problem,
    load_problem,
    revealed_relation,
)
from .errors import (
    CyclicInput,
    GenerationFailed,
    InternalInvariantViolation,
    LevelCapExceeded,
    ParseError,
    TieError,
    ValidationError,
)
from .levelk import (
    LevelKVertex,
    TargetOrder,
    build_levelk_graph,
    rationalize_levelk,
    t_level,
    verify_levelk_witness,
)
from .monotone import (
    PrivacyVertex,
    build_monotone_graph,
    rationalize_monotone,
    verify_monotone_witness,
)
from .orders import LinearOrder, Relation, find_cycle, linear_extension, transitive_closure

__version__ = "0.1.0"
