"""Classical simulator for the Borel-subgroup reduction of hidden subgroups in PGL/PSL(2; q).

Modules: ``ff`` (finite fields), ``pgroup`` (2x2 matrix groups and the
projective line), ``transitivity``, ``affine_rep`` (AGL(1; q) irreps),
``hsp`` (coset states, Fourier sampling, recovery), ``agl2`` (AGL(d; 2))
and ``cli``.
"""

from .ff import FieldCtx, FieldElement, make_field, parse_field
from .pgroup import INF, GroupElement, GroupFlavor, enumerate_group, group_order

__all__ = [
    "FieldCtx",
    "FieldElement",
    "make_field",
    "parse_field",
    "INF",
    "GroupElement",
    "GroupFlavor",
    "enumerate_group",
    "group_order",
]
__version__ = "0.1.0"
