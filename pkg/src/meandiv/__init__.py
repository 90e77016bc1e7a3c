"""meandiv: generalized alpha-divergences from strictly comparable
weighted quasi-arithmetic means.

Built around three ingredients: generators of quasi-arithmetic means
(:mod:`meandiv.means`), positive densities on weighted finite supports
(:mod:`meandiv.densities`), and the divergence engines
(:mod:`meandiv.divergences`, :mod:`meandiv.power`,
:mod:`meandiv.conformal`).  The per-point hot kernels run on a compiled
extension when available (see :mod:`meandiv._backend`).
"""

from meandiv._backend import BACKEND
from meandiv.centroid import CentroidReport, qa_centroid
from meandiv.conformal import (
    ConvexGenerator,
    SimplexPoint,
    bregman_div,
    conformal_i1,
    geometric_divergence,
    mn_bregman,
    mn_bregman_conformal,
    skew_jensen_mn,
)
from meandiv.densities import (
    DensityPair,
    DiscreteDensity,
    cauchy_ah_alpha_closed_form,
    cauchy_grid,
    counting_density,
    integrate_pointwise,
    load_density,
    save_density,
)
from meandiv.divergences import (
    AlphaParam,
    DivergenceResult,
    extended_kl,
    fg_cross_entropy,
    fg_entropy,
    fg_jeffreys,
    fg_kl,
    mn_alpha_div,
    qa_alpha_div,
    scalar_alpha_div,
    zhang_alpha_beta_div,
    zhang_rho_alpha_div,
)
from meandiv.means import (
    ARITHMETIC,
    GEOMETRIC,
    HARMONIC,
    IDENTITY,
    LOG,
    RECIP,
    Generator,
    WeightedMeanSpec,
    check_strict_comparability,
    e_term,
    e_term_power,
    get_generator,
    power_generator,
    power_mean,
    qam_weighted,
    taylor_qam_approx,
)
from meandiv.power import (
    PowerPair,
    csiszar_div,
    csiszar_generator_rs,
    homogeneity_check,
    power_alpha_div,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
