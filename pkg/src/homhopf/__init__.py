"""Exact computation with monoidal Hom-Hopf algebras and Hom-Hopf-Galois extensions."""
from .exactfield import GF, QQ, FieldSpec, Scalar
from .galois import (ComoduleAlgebra, GaloisCertificate, can_full, can_prime, can_X, comparison_f,
                     equivalence_report, functor_F, functor_G, galois_check, twist_comodule_algebra,
                     adjunction_maps, verify_comodule_algebra)
from .homrep import (HomComodule, HomModule, RelativeHopfModule, check_eq_1_9, cotensor, tensor_over,
                     verify_comodule, verify_module, verify_relative_hopf)
from .homstruct import (HomAlgebra, HomCoalgebra, HomHopfAlgebra, VerificationReport, dual_hopf, twist_hopf,
                        verify_algebra, verify_coalgebra, verify_hopf)
from .integrals import (TotalIntegral, lambda_section, lemma42_item4, lemma43_check, lemma44_ip,
                        phi_M_inverse, solve_total_integral, trace_map)
from .linalg import Matrix, Subspace
from .examples import (gen_cyclic, gen_cyclic_twist, gen_self_extension, gen_trivial_extension,
                       sweedler)

__version__ = "0.1.0"
