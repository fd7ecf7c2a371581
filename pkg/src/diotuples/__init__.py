"""Exact D(n)-tuple arithmetic, search and bound verification in imaginary quadratic rings."""

__version__ = "0.1.0"

from .quad_ring import (  # noqa: F401
    OmegaMode,
    ParityError,
    QuadInt,
    RingParams,
    cmp_abs,
    format_elem,
    make_ring,
    norm,
    parse_elem,
    sqrt_exact,
    units,
)
from .tuples import (  # noqa: F401
    DioTuple,
    ExtensionPair,
    PellWitness,
    VerifyReport,
    build_pell_witness,
    c_plus_minus,
    extend_triple,
    is_regular,
    make_tuple,
    pair_witness,
    pell_residuals,
    tuple_orbit,
    verify_tuple,
)
