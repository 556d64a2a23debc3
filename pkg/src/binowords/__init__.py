"""binowords: binomial coefficients of words and k-binomial complexity.

Exact-arithmetic toolkit for subword (binomial) coefficients, k-binomial
equivalence, factor/abelian/k-binomial complexity of classic infinite words,
abelian Rauzy graphs and their edge quotients, and the Thue-Morse
factorization machinery, with a CLI (`binowords`) on top.
"""

from .binomials import (
    BinomialSignature,
    abelian_equivalent,
    abelian_mass,
    binomial_coefficient,
    equivalent,
    power_delta,
    signature,
)
from .complexity import (
    ComplexityProfile,
    abelian_complexity,
    abelian_count_windows,
    binomial_complexity,
    complexity_table,
    factor_complexity,
    prec_compare,
    sturmian_image_factor_formula,
    sturmian_image_formula,
    tm_binomial_formula,
    tm_factor_formula,
    weight_spread,
)
from .core import BINARY, TERNARY, Alphabet, Word, parikh
from .errors import (
    BinowordsError,
    DecodeError,
    GeneratorSpecError,
    MorphismError,
    StabilizationError,
)
from .generators import (
    champernowne,
    factors,
    fibonacci,
    fixed_point,
    from_spec,
    g_word,
    grillenberger_word,
    h_word,
    image_of,
    period_doubling,
    sturmian,
    suffix_of,
    tau_g_word,
    thue_morse,
)
from .kernels import HAVE_COMPILED
from .morphisms import PHI, Morphism, MorphismClass, image_coefficient
from .rauzy import (
    AbelianRauzyGraph,
    build_graph,
    edge_quotients,
    kplus1_formula,
)
from .tmstructure import (
    classify_factor,
    phi_factorizations,
    phi_image,
    tm_decode,
)
from .verify import run_all, run_suite, suite_names

__version__ = "0.1.0"

__all__ = [
    "Alphabet",
    "Word",
    "BINARY",
    "TERNARY",
    "parikh",
    "BinomialSignature",
    "binomial_coefficient",
    "signature",
    "equivalent",
    "abelian_equivalent",
    "abelian_mass",
    "power_delta",
    "ComplexityProfile",
    "factor_complexity",
    "abelian_complexity",
    "binomial_complexity",
    "complexity_table",
    "prec_compare",
    "weight_spread",
    "abelian_count_windows",
    "tm_factor_formula",
    "tm_binomial_formula",
    "sturmian_image_formula",
    "sturmian_image_factor_formula",
    "BinowordsError",
    "StabilizationError",
    "GeneratorSpecError",
    "MorphismError",
    "DecodeError",
    "from_spec",
    "factors",
    "fixed_point",
    "image_of",
    "suffix_of",
    "thue_morse",
    "fibonacci",
    "period_doubling",
    "sturmian",
    "h_word",
    "g_word",
    "tau_g_word",
    "grillenberger_word",
    "champernowne",
    "Morphism",
    "MorphismClass",
    "PHI",
    "image_coefficient",
    "AbelianRauzyGraph",
    "build_graph",
    "edge_quotients",
    "kplus1_formula",
    "phi_image",
    "phi_factorizations",
    "classify_factor",
    "tm_decode",
    "run_suite",
    "run_all",
    "suite_names",
    "HAVE_COMPILED",
    "__version__",
]
