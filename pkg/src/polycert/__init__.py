"""polycert: certified symbolic-numeric polynomial system solving.

Exact rational and outward-rounded interval arithmetic, real-root
isolation with refinable isolating boxes, Groebner bases, rational
univariate representations, discriminant varieties and open-cell CAD,
applied to ODE parameter identification, 2-D structural stability and
H-infinity norm enclosure.
"""

from .intervals import DEFAULT_PRECISION, MPInterval, SolutionBox, iv_arith, iv_eval_poly, iv_refine
from .rationals import Rational, rat_arith
from .unipoly import (
    IsolatingInterval,
    UniPoly,
    count_real_roots,
    isolate_real_roots,
    refine_root,
    sign_at,
    squarefree_part,
)
from .multipoly import (
    MultiPoly,
    SturmHabichtSequence,
    SubresSequence,
    discriminant,
    partial_derivative,
    resultant,
    specialize,
    sturm_habicht_sequence,
    subresultant_sequence,
    tarski_query,
)
from .groebner import (
    DEGREVLEX,
    LEX,
    GroebnerBasis,
    MonomialOrder,
    block_elimination,
    buchberger,
    elimination_ideal,
    is_zero_dimensional,
    normal_form,
    quotient_basis,
)
from .zdsolve import (
    RUR,
    compute_rur,
    interval_newton,
    isolate_system,
    separating_element,
    solve_rur,
    solve_system,
)
from .paramspace import CadTree, DiscriminantVariety, discriminant_variety, open_cad, sample_points

__version__ = "0.1.0"
