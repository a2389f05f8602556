# Copyright brauerheight developers 2024 - Present
# Full MIT License can be found in `LICENSE.txt` at the project root.

from .core import Field, FieldElement, LaurentPoly, field_make
from .witt import (
    WittRing,
    LawCheckReport,
    WittVector,
    check_ring_laws,
    configure_witt_cache,
    ghost_components,
    structural_polys,
    teichmuller,
    witt_add,
    witt_F,
    witt_from_int,
    witt_mul,
    witt_neg,
    witt_R,
    witt_sub,
    witt_V,
)
from .formal_group import (
    FormalGroupLaw,
    HeightKind,
    HeightReport,
    additive_law,
    ec_fgl,
    fgl_check,
    hasse_invariant,
    height_of,
    lubin_tate,
    mult_by,
    multiplicative_law,
)
from .dieudonne import d_model, f_is_zero, ker_f_dim, truncate, truth_table
from .cech import (
    HeightCertificate,
    Verdict,
    frobenius_scalar,
    ker_f_dim_cech,
    make_hypersurface,
    phi_tower,
    serre_D,
    verify_certificate,
)
from .strata import deuring_mass, stratum_class, strata_table
from .parser import parse_poly
from .config import OutputFormat, RunConfig
from .exceptions import *

__package__ = "brauerheight"
__title__ = "brauerheight"
__description__ = "Heights of formal groups and formal Brauer groups in exact arithmetic"
__author__ = "brauerheight developers"
__license__ = "MIT"
__version__ = "0.1.0"
