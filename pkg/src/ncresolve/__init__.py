"""Degree-truncated noncommutative Groebner bases, syzygies, and minimal
projective resolutions over quotient algebras Gamma = R/<Omega>, reporting
dim Ext^{s,t}(M, K).  The mod-2 Steenrod algebra is the built-in instance."""

from .algebra import (ConfigurationError, ContractViolation, FreeAlgebra,
                      GeneratorTable, LEFT_LENGTH_LEX, MonomialOrder,
                      ParseError, Polynomial, PrimeField, RIGHT_LENGTH_LEX,
                      compare)
from .reduction import (ReducerSet, TruncatedContext, divides, normal_form,
                        reduce_once, truncated_normal_form)
from .groebner import (OverlapTriple, RingGroebnerBasis, complete, is_groebner,
                       overlap_set, s_polynomial)
from .free_module import (FreeModule, ModuleGroebnerBasis, ModuleVector,
                          left_divide, module_complete, module_lcm,
                          module_reduce, module_s_vector, normalize_vector,
                          pot_compare, relation_overlap_set)
from .syzygy import (SyzygyGenerators, SyzygyProblem, check_minimal,
                     groebner_syzygies, lift_syzygies, minimalize,
                     monomial_syzygies)
from .resolution import (ExtChart, ModulePresentation, Resolution, ext_chart,
                         extend, initial_kernel, resolution_from_json, resolve)
from .steenrod import (AdemRelation, AdmissibleSequence, adem, adem_relations,
                       admissible_count, admissible_sequences, binom_mod_p,
                       is_admissible, steenrod_algebra, steenrod_context)
from .oracle import (DegreeBasis, DenseMatrixFp, VerificationReport,
                     gamma_basis, matrix_of, rank_kernel, reduced_words,
                     verify_resolution)

__version__ = "0.1.0"
