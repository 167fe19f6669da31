"""Complements to maximal tori in finite groups of Lie type.

Root systems and Weyl groups of G2 and D4, the Tits extension of the Weyl
group, twisted tori and their fixed groups, explicit complements for G2,
2G2 and 3D4, a signed-permutation engine for the twisted orthogonal
groups, and the splitting criteria for the linear, unitary and orthogonal
families.
"""

from .classify import SplitVerdict, TorusSpec
from .kernels import BACKEND as KERNEL_BACKEND

__version__ = "0.1.0"

__all__ = ["TorusSpec", "SplitVerdict", "KERNEL_BACKEND", "__version__"]
