# Copyright brauerheight developers 2024 - Present
# Full MIT License can be found in `LICENSE.txt` at the project root.

from .field import Field, FieldElement, field_make, frobenius_elem
from .intpoly import IntPoly, intpoly_divexact
from .laurent import LaurentPoly, laurent_coefficient
from .linalg import fp_kernel_dim, fp_null_space, fp_rank
from .rings import IntegerModRing

__all__ = (
    "Field",
    "FieldElement",
    "field_make",
    "frobenius_elem",
    "IntPoly",
    "intpoly_divexact",
    "LaurentPoly",
    "laurent_coefficient",
    "fp_kernel_dim",
    "fp_null_space",
    "fp_rank",
    "IntegerModRing",
)
