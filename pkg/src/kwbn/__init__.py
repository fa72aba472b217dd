"""Exact KW-Euler and Borel class computations on the classifying space BN."""

__version__ = "0.1.0"

from .ring import (  # noqa: E402
    DEFAULT_CAP,
    GAMMA,
    BNElement,
    GammaScalar,
    MultiPoly,
    Var,
    bn_add,
    bn_mul,
    degree_of,
    multipoly_mul,
    scalar_op,
    specialize_gamma_zero,
    substitute,
)
from .reps import (  # noqa: E402
    SIGN,
    TRIVIAL,
    Decomposition,
    IrrepLabel,
    NRep,
    decompose,
    determinant_twist,
    make_irrep,
    parse_expression,
    sym_power,
    tensor,
)
from .ternary import (  # noqa: E402
    OrbitIndex,
    borel_defining_polynomial,
    orbit_sum,
    triple_borel,
    triple_borel_eval,
)
from .euler import (  # noqa: E402
    TotalBorel,
    alpha,
    b1_closed,
    b1_recursive,
    beta,
    cartan_total,
    consistency_check,
    euler_class,
    sym_euler,
)
from .presentations import (  # noqa: E402
    RingPresentation,
    bgl_presentation,
    bsl_presentation,
    even_odd_split,
    kunneth_product,
)
