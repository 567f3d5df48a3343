"""flexiplex: continuous families of non-congruent simplices with fixed
codimension-2 face volumes in pseudo-Euclidean spaces.

Exact rational arithmetic underpins every constancy claim (`exactmat`,
`simplex`, `families`); floating point appears only when matrices are
realized as coordinates (`realize`) and pushed through polar duality
(`dual`). `search` samples the degenerate strata for Euclidean candidates,
`checks` bundles the headline verifications, and `cli` fronts it all.
"""

from .exactmat import Rational, Signature, SymMatrix, det, minor, null_space, rank, signature
from .families import (
    DeformationFamily,
    SweepReport,
    at,
    build_family,
    c_block_matrix,
    choose_generic_d,
    family_even_n,
    family_n4,
    family_n5,
    family_odd_n,
    membership_D,
    membership_U,
    membership_U0,
    q0,
    sweep,
    verified_grid,
)
from .realize import (
    RealizedSimplex,
    pseudo_dot,
    realize,
    realize_centered,
    realize_rank_deficient,
)
from .simplex import PseudoSimplex, SignedSquaredVolume
from .dual import (
    DualPair,
    calibrate_constants,
    codim2_volume_via_transfer,
    dual_simplex,
    dual_volume,
    family_dual_report,
    make_dual_pair,
    rescale_c,
)
from .search import SearchHit, SignMatrix, d_members_from, enumerate_H, is_psd, sample_and_test

__version__ = "0.1.0"

__all__ = [
    "DeformationFamily",
    "DualPair",
    "PseudoSimplex",
    "Rational",
    "RealizedSimplex",
    "SearchHit",
    "SignMatrix",
    "Signature",
    "SignedSquaredVolume",
    "SweepReport",
    "SymMatrix",
    "at",
    "build_family",
    "c_block_matrix",
    "calibrate_constants",
    "choose_generic_d",
    "codim2_volume_via_transfer",
    "d_members_from",
    "det",
    "dual_simplex",
    "dual_volume",
    "enumerate_H",
    "family_dual_report",
    "family_even_n",
    "family_n4",
    "family_n5",
    "family_odd_n",
    "is_psd",
    "make_dual_pair",
    "membership_D",
    "membership_U",
    "membership_U0",
    "minor",
    "null_space",
    "pseudo_dot",
    "q0",
    "rank",
    "realize",
    "realize_centered",
    "realize_rank_deficient",
    "rescale_c",
    "sample_and_test",
    "signature",
    "sweep",
    "verified_grid",
]
