# Copyright brauerheight developers 2024 - Present
# Full MIT License can be found in `LICENSE.txt` at the project root.

from .cochain import (
    CechCochain,
    CoboundarySolution,
    CohomClass,
    Correction,
    Obstruction,
    class_from_normal_form,
    class_normal_form,
    coboundary,
    coboundary_solve,
    default_window,
    projective_cech_dim,
)
from .hypersurface import HypersurfaceRing, make_hypersurface
from .serre import OneForm, exterior_derivative, serre_D
from .tower import (
    HeightCertificate,
    LevelRecord,
    StructureCocycle,
    Verdict,
    frobenius_scalar,
    hn_O_basis,
    hypersurface_cohomology_dims,
    ker_f_dim_cech,
    phi_tower,
    structure_cocycle,
    verify_certificate,
)

__all__ = (
    "CechCochain",
    "CoboundarySolution",
    "CohomClass",
    "Correction",
    "Obstruction",
    "class_from_normal_form",
    "class_normal_form",
    "coboundary",
    "coboundary_solve",
    "default_window",
    "projective_cech_dim",
    "HypersurfaceRing",
    "make_hypersurface",
    "OneForm",
    "exterior_derivative",
    "serre_D",
    "HeightCertificate",
    "LevelRecord",
    "StructureCocycle",
    "Verdict",
    "frobenius_scalar",
    "hn_O_basis",
    "hypersurface_cohomology_dims",
    "ker_f_dim_cech",
    "phi_tower",
    "structure_cocycle",
    "verify_certificate",
)
