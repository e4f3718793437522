"""Gap functionals, layered sequence constructions, and auction transforms.

Thin wrapper around the compiled extension; every public name lives there.
"""

from _menugap import *  # noqa: F401,F403
from _menugap import __doc__ as _ext_doc

__doc__ = _ext_doc if _ext_doc else __doc__
