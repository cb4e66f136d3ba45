"""Exact integer computations with preprojective algebras of quivers.

Quivers, their doubles, and path-algebra arithmetic over Z; noncommutative
Groebner machinery with unit leading coefficients; truncated Hilbert series;
the graded torsion of HH_0 with its divided-power generators; and the
necklace Lie bialgebra with its induced Poisson structures.
"""

from .quiver import (Quiver, QuiverClass, Forest, QuiverError, catalog, classify,
                     double, find_extended_dynkin_subquiver, forest_for_white)
from .freealg import (Bituple, CycElement, CyclicClass, Element, ModRing,
                      PathContext, QQ, ZZ, cyclic_project, free_context,
                      multiply, parse_element, preprojective_relation,
                      render_cyclic, render_element, rep_of, w_ab, z_ab)
from .rewrite import (ConfluenceReport, MonomialOrder, NonUnitLead, RewriteRule,
                      RewriteSystem, complete, diamond_check, render_rule)
from .intlinalg import (LatticeSolver, SNFResult, SparseIntMatrix, TorsionSummary,
                        quotient_structure, saturation_gap, smith_normal_form)
from .series import (SeriesError, TruncatedSeries, cartan_t_matrix, egid_check,
                     hT, hT_of, hilbert_prep, ncci_check, sym_plus_series, zeta)
from .homology import (GradedTorsionReport, HomologyClass, LambdaComputation,
                       PoissonPresentation, forest_system, frobenius_cyc, ghost,
                       hp0_poisson, lambda_graded, poisson_presentation,
                       preprojective_element, preprojective_system,
                       r_power_class, r_power_cyclic)
from .necklace import (CornerPoisson, SymplecticPairing, WedgePair, bracket,
                       bracket_of_wedge, bv_defect, cobracket, delta_ell,
                       delta_ell_sum, double_bracket, double_derivative,
                       loday_bracket, omega, partial_derivative, poisson_i0)

__version__ = "0.1.0"
