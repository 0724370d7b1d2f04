"""Exact one-dimensional aggregation-patch dynamics up to blow-up.

A patch (unit-density characteristic function of a finite interval union)
moves along straight-line characteristics and collapses at t = 1 onto an
atomic skeleton; compact variants collapse onto arbitrary null compacta.
The package provides the forward flow, the skeleton, both inverse
constructions, weak-convergence verification, an independent particle
oracle, and box-counting diagnostics.
"""

from .analysis import BoxDimensionFit, box_count, box_dimension
from .cantor import CantorGapGenerator, staircase
from .errors import (
    CollisionError,
    ConfigError,
    DomainError,
    NearCoincidenceWarning,
    NonInvertibleMeasureWarning,
    VerificationError,
)
from .flow import FlowSnapshot, evolve, snapshot_velocity, trajectory, velocity
from .intervals import (
    CompactSet,
    Interval,
    IntervalUnion,
    TruncationResult,
    hull,
    mass_left_of,
    measure,
    normalize,
    truncate,
)
from .inverse_compact import (
    CDFMeasure,
    CompactConstruction,
    PushforwardReport,
    fiber,
    gap_velocity,
    inverse_compact,
    inverse_compact_from_gaps,
    limit_map,
    pushforward_cdf,
    verify_pushforward,
)
from .inverse_open import inverse_open
from .measures import (
    COS_SURROGATE,
    MONOMIAL_X,
    MONOMIAL_X2,
    MONOMIAL_X3,
    PolynomialTestFunction,
    convergence_table,
    pair_atoms,
    pair_snapshot,
    weak_error,
    weak_error_bound,
)
from .oracle import (
    IntegrationResult,
    ParticleSystem,
    cluster,
    discretize,
    integrate,
    particle_velocities,
    particle_velocity,
    total_momentum,
)
from .skeleton import (
    AtomicMeasure,
    atomic_measure_from_pairs,
    skeleton,
    skeleton_bounds,
)

__version__ = "0.1.0"

__all__ = [
    "AtomicMeasure",
    "BoxDimensionFit",
    "CDFMeasure",
    "COS_SURROGATE",
    "CantorGapGenerator",
    "CollisionError",
    "CompactConstruction",
    "CompactSet",
    "ConfigError",
    "DomainError",
    "FlowSnapshot",
    "IntegrationResult",
    "Interval",
    "IntervalUnion",
    "MONOMIAL_X",
    "MONOMIAL_X2",
    "MONOMIAL_X3",
    "NearCoincidenceWarning",
    "NonInvertibleMeasureWarning",
    "ParticleSystem",
    "PolynomialTestFunction",
    "PushforwardReport",
    "TruncationResult",
    "VerificationError",
    "atomic_measure_from_pairs",
    "box_count",
    "box_dimension",
    "cluster",
    "convergence_table",
    "discretize",
    "evolve",
    "fiber",
    "gap_velocity",
    "hull",
    "integrate",
    "inverse_compact",
    "inverse_compact_from_gaps",
    "inverse_open",
    "limit_map",
    "mass_left_of",
    "measure",
    "normalize",
    "pair_atoms",
    "pair_snapshot",
    "particle_velocities",
    "particle_velocity",
    "pushforward_cdf",
    "skeleton",
    "skeleton_bounds",
    "snapshot_velocity",
    "staircase",
    "total_momentum",
    "trajectory",
    "truncate",
    "velocity",
    "verify_pushforward",
    "weak_error",
    "weak_error_bound",
]
