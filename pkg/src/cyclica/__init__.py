"""Exact cyclic, equivariant and constant cyclic cohomology of finite-dimensional algebras."""

from .algebra import StructureConstantAlgebra, SubalgebraInclusion, ValidationReport, validate_algebra
from .algebra_complex import AlgebraCochainComplex, hc_constant, hc_lambda, hc_plain
from .cocyclic import HCReport, HCRow, MatrixCocyclicModule, build_total_complex, cohomology_dims
from .correspondence import (
    CorrespondencePair,
    VerificationReport,
    verify_bconstant_generalization,
    verify_corollary_semisimple,
    verify_cyclic_map,
    verify_image_constant,
    verify_theorem,
)
from .equivariant import EquivariantComplex, build_equivariant_complex, hc_equivariant
from .hopf import HopfAlgebraData, ModuleAlgebraAction, crossed_product, validate_action, validate_hopf
from .linalg import LinearSubspace, SparseMatrix
from .specfile import parse_spec, serialize

__version__ = "0.1.0"
