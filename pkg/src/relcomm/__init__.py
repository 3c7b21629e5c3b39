"""Exact relative commutativity degree spectra of finite groups.

The probability that a random element of a subgroup H commutes with a
random element of G is an exact rational; the set of these values over
all subgroups is the group's degree spectrum. This package computes
spectra with exact arithmetic, recognizes the structural cases realized
by groups with small spectra, and audits the related inequalities and
product identities over a built-in catalog of small groups.
"""

from .classify import (
    Case,
    CaseTag,
    ClassificationReport,
    classify,
    abelian_maximal_spectrum,
    uniform_class_spectrum,
    predicted_spectrum,
    quotient_shape,
    verify_classification,
)
from .degrees import (
    DegreeSpectrum,
    Rat,
    all_relative_degrees,
    comm_degree,
    degree_spectrum,
    pair_count_oracle,
    rat_str,
    rel_comm_degree,
    rel_comm_degree_within,
)
from .groups import (
    FiniteGroup,
    QuotientMap,
    Subgroup,
    alternating,
    cyclic,
    dicyclic,
    dihedral,
    direct_product,
    elementary_abelian,
    from_table,
    heisenberg,
    perm_group,
    semidirect_product,
    sl2_3,
    symmetric,
)
from .lattice import (
    FrobeniusShape,
    SubgroupLattice,
    all_subgroups,
    cached_all_subgroups,
    is_normal,
)

__version__ = "0.1.0"

__all__ = [
    "Case", "CaseTag", "ClassificationReport", "classify",
    "abelian_maximal_spectrum", "uniform_class_spectrum", "predicted_spectrum",
    "quotient_shape", "verify_classification",
    "DegreeSpectrum", "Rat", "all_relative_degrees", "comm_degree",
    "degree_spectrum", "pair_count_oracle", "rat_str", "rel_comm_degree",
    "rel_comm_degree_within",
    "FiniteGroup", "QuotientMap", "Subgroup", "alternating", "cyclic",
    "dicyclic", "dihedral", "direct_product", "elementary_abelian",
    "from_table", "heisenberg", "perm_group", "semidirect_product",
    "sl2_3", "symmetric",
    "FrobeniusShape", "SubgroupLattice", "all_subgroups",
    "cached_all_subgroups", "is_normal",
]
