"""Reflection-group structure of Sylow automizers, verified on concrete groups.

The pipeline: take a finite group with an abelian Sylow p-subgroup P, form
the automizer E = N(P)/C(P) acting on the largest elementary abelian
subgroup of P over F_p, find a finite-field structure splitting E into a
K-linear part and Galois automorphisms, and check that the normal subgroup
generated by reflections acts irreducibly -- reproducing the classification
table rows at desk scale, together with the Schur-multiplier obstruction.
"""

from automref.automizer import AutomizerAction, automizer_action, omega1_basis
from automref.catalog import (AnalysisReport, ProductReport, analyze,
                              combine_reports, construct, ingest_generators,
                              run_table)
from automref.cohom import (ObstructionReport, dual_module,
                            multiplier_p_part_rank, obstruction_consistency,
                            solomon_check)
from automref.ffield import FieldDesc, field
from automref.fmatrix import (Mat, MatGroup, contragredient, enumerate_group,
                              fixed_space, kernel_basis, rank, wedge_square)
from automref.groups import (AbelianPStructure, Orbit, abelian_structure,
                             alternating, centralizer_of_subgroup,
                             direct_product, normalizer_of_subgroup,
                             sylow_subgroup, symmetric, wreath_product)
from automref.perm import (PermGroup, Permutation, format_cycles,
                           p_part_of_element, parse_permutation)
from automref.reflect import (ReflectionAnalysis, find_reflection_subgroup,
                              fingerprint, fingerprint_and_identify,
                              fixed_space_of_group, is_irreducible,
                              is_reflection, reflection_subgroup, spin)
from automref.semilinear import (SemilinearDecomposition, find_k_structure,
                                 restrict_to_k, verify_k_structure)
from automref.weyl import (RootDatum, check_refl_chevalley, fixed_dim_scan,
                           root_datum, subspace_automizer, weyl_matgroup)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
