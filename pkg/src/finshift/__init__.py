"""Li-Yorke chaos of one-sided shifts over finite topological spaces."""

from .chaos import (
    ChaosReport,
    CycleFound,
    EscapeProven,
    FiniteMap,
    GShiftReport,
    NatAffineTail,
    NonQPReport,
    QPVerdict,
    VerificationReport,
    check_conditions,
    default_parameters,
    first_non_close_pair,
    gshift_chaotic,
    has_non_quasi_periodic_point,
    parse_gsmap,
    quasi_periodic,
    replay_certificate,
    scrambled_family,
    scrambled_witness,
    shadow_thresholds,
    verify_equivalence,
)
from .errors import (
    CapExceeded,
    DuplicateParameters,
    FinshiftError,
    IndexOutOfRange,
    NotATopology,
    NotChaotic,
    ParseError,
    SpaceTooSmall,
    UndecidedWithinBudget,
    UnknownPoint,
    UnsupportedCombination,
    WitnessRequiresNonClosePair,
)
from .fintop import (
    ClosenessRelation,
    FinSpace,
    OpenFamily,
    SpacePredicates,
    dump_space,
    enumerate_topologies,
    oracle_enumerate,
    parse_space,
)
from .shiftspace import (
    ALL_ZERO,
    Bitstream,
    HorizonStats,
    PairVerdict,
    ShiftView,
    UltPeriodic,
    UltPeriodicBits,
    Witness,
    WitnessCertificate,
    classify_pair,
    closeness_indicator,
    finite_horizon_oracle,
    gamma_member,
    parse_bitstream,
    parse_sequence,
    shift,
)

__version__ = "0.1.0"
