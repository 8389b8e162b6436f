"""Integral binary quadratic forms and their class groups.

The heavy inner loops live in a compiled extension when it is available;
`bqf.kernels.BACKEND` names the implementation actually in use.
"""

from .classfield import (
    SplitReport,
    distinct_degree_factor,
    hilbert_class_polynomial,
    j_invariant,
    splitting_count,
    verify_theorem8,
)
from .classgroup import (
    ClassGroup,
    classes_representing,
    compose,
    group_structure,
    inverse,
    odd_witness,
    order,
    power,
    sqrt_in_group,
)
from .errors import (
    DiscriminantMismatch,
    DomainError,
    ImprimitiveForm,
    InternalError,
    NonGenericPrime,
    NotPositiveDefinite,
    PrecisionError,
    QFError,
)
from .forms import (
    Discriminant,
    Form,
    class_number,
    enumerate_reduced,
    is_fundamental,
    is_reduced,
    principal_form,
    reduce,
)
from .isotropy import (
    HasseCertificate,
    IntersectionVerdict,
    difference_form,
    hasse_invariant,
    is_anisotropic,
    pair_report,
    trivial_intersection,
)
from .represent import (
    LocalReport,
    RepSet,
    genus_characters,
    joint_nonsquare_multiple,
    locally_represented,
    nonsquare_multiple,
    properly_represents,
    rep_set,
    represents,
)

__all__ = [
    "ClassGroup",
    "Discriminant",
    "DiscriminantMismatch",
    "DomainError",
    "Form",
    "HasseCertificate",
    "ImprimitiveForm",
    "InternalError",
    "IntersectionVerdict",
    "LocalReport",
    "NonGenericPrime",
    "NotPositiveDefinite",
    "PrecisionError",
    "QFError",
    "RepSet",
    "SplitReport",
    "class_number",
    "classes_representing",
    "compose",
    "difference_form",
    "distinct_degree_factor",
    "enumerate_reduced",
    "genus_characters",
    "group_structure",
    "hasse_invariant",
    "hilbert_class_polynomial",
    "inverse",
    "is_anisotropic",
    "is_fundamental",
    "is_reduced",
    "j_invariant",
    "joint_nonsquare_multiple",
    "locally_represented",
    "nonsquare_multiple",
    "odd_witness",
    "order",
    "pair_report",
    "power",
    "principal_form",
    "properly_represents",
    "rep_set",
    "represents",
    "reduce",
    "splitting_count",
    "sqrt_in_group",
    "trivial_intersection",
]
