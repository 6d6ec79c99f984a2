"""tourlab: an exact-arithmetic laboratory for tournament densities.

Enumerates tournaments up to isomorphism, computes bias polynomials and
minimum feedback arc sets, classifies dominant-family membership, and
builds and measures explicit large-tournament constructions.
"""

from .bias import (
    BiasPolynomial,
    ClassificationRecord,
    DensityPolynomialP,
    ForwardHistogram,
    bias_polynomial,
    classify_catalog,
    density_poly_p,
    forward_histogram,
    in_F,
    in_bias_subset,
    typical_density,
)
from .construct import (
    BigTournament,
    build_blowup,
    build_tnp,
    build_transversal,
    blowup_group_count,
)
from .core import (
    CanonicalForm,
    Tournament,
    aut_size,
    canonical_form,
    contains_subtournament,
    cyclic3,
    induced,
    parse,
    reverse,
    transitive,
)
from .density import (
    DensityReport,
    bias_margin,
    density_census,
    density_exact,
    density_montecarlo,
    dominance_report,
)
from .enumeration import (
    TournamentCatalog,
    enumerate_tournaments,
    load_or_enumerate,
)
from .fas import (
    FasResult,
    fas_dominance_condition,
    in_A,
    min_fas,
    sqrt_log_over,
)

__version__ = "0.1.0"

__all__ = [
    "BiasPolynomial",
    "BigTournament",
    "CanonicalForm",
    "ClassificationRecord",
    "DensityPolynomialP",
    "DensityReport",
    "FasResult",
    "ForwardHistogram",
    "Tournament",
    "TournamentCatalog",
    "aut_size",
    "bias_margin",
    "bias_polynomial",
    "blowup_group_count",
    "build_blowup",
    "build_tnp",
    "build_transversal",
    "canonical_form",
    "classify_catalog",
    "contains_subtournament",
    "cyclic3",
    "density_census",
    "density_exact",
    "density_montecarlo",
    "density_poly_p",
    "dominance_report",
    "enumerate_tournaments",
    "fas_dominance_condition",
    "forward_histogram",
    "in_A",
    "in_F",
    "in_bias_subset",
    "induced",
    "load_or_enumerate",
    "min_fas",
    "parse",
    "reverse",
    "sqrt_log_over",
    "transitive",
    "typical_density",
]
