"""diophlab: exact experiments in simultaneous rational approximation.

Core surface:

* realspec   - exact base numbers, certified enclosures, rounding decisions
* approx     - minimal-point sequences plus the brute-force oracle
* subspaces  - saturated integer bases, Grassmann coordinates, heights
* constants  - the exponent constants with certified digits
* lab        - derived planes/index sets and the inequality report suite
* cli        - `diophlab` command-line entry point
"""

from .approx import (ApproxVector, MinimalPointRecord, MinimalPointSequence,
                     QualityPair, best_candidate, brute_force_minimal_points,
                     exponent_estimates, l_value, make_primitive,
                     minimal_points, sup_norm, truncations)
from .constants import ConstantSet, compute_constants
from .kernels import BACKEND
from .lab import (LabRun, LEMMA_IDS, RatioReport, build_lab_run, build_V,
                  build_W, compute_C, det_identity_residual, index_sets,
                  theorem_gate, verify_det_identity, verify_lemma_ratios,
                  verify_pointy)
from .realspec import (DiophlabError, EscalationError, InvalidSpecError,
                       PrecisionContext, RealContext, RealSpec,
                       SuspectedRationalityError, builtin_spec,
                       degree_precheck, evaluate_powers,
                       nearest_integer_multiple)
from .subspaces import (RationalSubspace, height, height_product_ratio,
                        intersect, orthogonal_complement, saturate,
                        subspace_sum, wedge)

__version__ = "0.1.0"
