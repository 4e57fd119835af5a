"""Quasi-cyclic McEliece and Niederreiter cryptosystems at desk scale."""

from .errors import *  # noqa: F401,F403
from .field import GF, FieldElement, gf
from .circulant import Circulant
from .codes import LinearCode, SyndromeDecoder
from .linalg import Permutation
from .qcgen import ArraySpec, StackSpec, generate_c, generate_h

__version__ = "0.1.0"
