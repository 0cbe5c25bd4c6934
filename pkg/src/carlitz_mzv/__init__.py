"""Exact multizeta arithmetic for the rational function field over F_q.

Truncated Laurent series at the infinite place, the Carlitz period and
interpolation polynomials, power sums by several independent methods,
multizeta values (including degenerate and preorder-indexed variants),
the associated rigid-analytic period matrices, identity verification, and
F_p-linear relation discovery.
"""

from .errors import (CarlitzError, InsufficientPrecisionError,
                     LatticeCapError, NonconvergentEvaluationError,
                     BudgetExceededError, SideConditionError)
from .fq import FieldContext, make_field_context, least_irreducible
from .polys import PolyT, RatFunc
from .series import (TildeSeries, TSeries, series_eq, residual_valuation,
                     embed_poly, embed_ratfunc, DEFAULT_LATTICE_CAP)
from .carlitz import CarlitzCache
from .powersums import (power_sum_brute, power_sum_formula,
                        power_sum_rational, power_sum_interp,
                        power_sum_delayed, power_sum_auto, multi_power_sum,
                        power_sum_valuation_bound, bound_is_increasing)
from .mzv import (Composition, as_composition, LinearPreorder,
                  enumerate_preorders, jumps_to_preorder,
                  nondegenerate_preorder, zeta, zeta_I,
                  zeta_totally_degenerate, zeta_rho, zeta_direct)
from .reconstruct import rational_reconstruct
from .motive import (MotiveBundle, build_motive, plan_truncations,
                     NormalizedPeriods, period_matrix, DegenerateMotive,
                     degenerate_motive, phi_integrality_check)
from .relations import (IdentityInstance, verify_sum_shuffle,
                        verify_shuffle_product, verify_catalog, CATALOG_IDS,
                        enumerate_atoms, enumerate_monomials, fp_nullspace,
                        RelationCandidate, find_relations, relation_in_span)
from . import jsonio

__version__ = "0.1.0"
