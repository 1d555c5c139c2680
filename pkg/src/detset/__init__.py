"""Exact determinant sets D_n(A) = {det M : M has entries in A}.

Set algebra over F_p and Z, gadget matrices realizing sums of products as
determinants, exhaustive enumeration, and checkers for growth bounds.
"""

from .bounds import (
    BoundReport,
    check_cauchy_davenport,
    check_cor3,
    check_cor4,
    check_example1,
    check_glk_inner,
    check_lemma2,
)
from .enumerate import EnumBudget, dset, dset_cofactor, dset_lower_bound_constructive, dset_naive
from .exceptions import *  # noqa: F401,F403
from .gadgets import (
    Assignment,
    CoverageCertificate,
    GadgetWitness,
    block_double,
    build_bidiagonal,
    build_combined,
    build_gadget,
    build_m0,
    coverage_certificate,
    synthesize_witness,
)
from .matrix import Matrix, block2x2, det, det_oracle, permanent, permanent_oracle, sub
from .ring import INTEGERS, RingKind, RingSpec, make_ring
from .setalg import (
    ElemSet,
    TraceSet,
    difference_set,
    dilate,
    iter_productset,
    iter_sumset,
    negate,
    normalize_symmetric,
    parse_set,
    productset,
    sumset,
    traced_iter_productset,
    traced_iter_sumset,
)

__version__ = "0.1.0"
