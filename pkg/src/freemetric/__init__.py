"""Length functions, metrics and commutator estimates on free groups."""

__version__ = "0.1.0"

from .errors import (
    AlphabetMismatch,
    ConjugacyWitnessInvalid,
    DomainExceeded,
    EpsilonTooLarge,
    FreeMetricError,
    LimitExceeded,
    NegativeDefect,
    NegativeLetterInMonoid,
    NotHomogeneous,
    NotNormalized,
    UnknownSymbol,
)
from .words import (
    AbelianImage,
    Alphabet,
    Letter,
    MonoidWord,
    Word,
    abelianize,
    commutator,
    conjugate,
    cyclic_reduce,
    enumerate_ball,
    generators,
    identity,
    invert,
    is_conjugate,
    multiply,
    parse,
    parse_monoid,
    power,
    random_word,
)
from .lengths import (
    SQRT2_FORM,
    Flags,
    LengthFn,
    LinearForm,
    MatchingResult,
    Weights,
    cyc_length,
    cyc_length_fn,
    edit_distance,
    fg_distance,
    induced_distance,
    lcs,
    pullback_length,
    pullback_length_fn,
    wc_length,
    wc_length_fn,
    wc_length_oracle,
    word_length,
    word_length_fn,
)
from .quasimorphisms import (
    BrooksPattern,
    Quasimorphism,
    brooks,
    brooks_qm,
    count_nonoverlap,
    defect_sample,
    induced_pseudolength,
    linear_qm,
    qm_commutator_report,
    qm_homogenize,
)
from .rotations import (
    RotationRep,
    UnitQuaternion,
    ball_check,
    commutator_ratio,
    make_local_length,
    quat_angle,
    represent,
)
from .analysis import (
    CommutatorGrid,
    DefectReport,
    RationalSeminorm,
    WalkStats,
    ball_defect,
    cl_bound_check,
    commutator_report,
    conjugation_check,
    equivalence_gap,
    fmk_table,
    homogeneity_defect,
    homogenize,
    power_bounds_check,
    random_defect,
    rational_seminorm,
    shift,
    splitting_check,
    triangle_defect,
    walk_demo,
)
