"""Polynomial solvers and 3x3 eigenpairs over complex scalars.

The scalar kernels come from the compiled ``_kernels`` extension when it is
importable, otherwise from the pure-Python ``_kernels_py`` twin. Setting
``CONIX_PURE_PYTHON=1`` forces the fallback.
"""

import os

if os.environ.get("CONIX_PURE_PYTHON", "") not in ("", "0"):
    from . import _kernels_py as kernels

    BACKEND = "python"
else:
    try:
        from . import _kernels as kernels

        BACKEND = "cython"
    except ImportError:  # extension not built
        from . import _kernels_py as kernels

        BACKEND = "python"

from .solvers import (  # noqa: E402
    EigenPair,
    QuarticRoots,
    eigen3,
    roots_iterative,
    solve_closed_form,
    solve_cubic,
    solve_quadratic,
    solve_quartic_closed_form,
    trim_leading,
)

__all__ = [
    "BACKEND",
    "EigenPair",
    "QuarticRoots",
    "eigen3",
    "kernels",
    "roots_iterative",
    "solve_closed_form",
    "solve_cubic",
    "solve_quadratic",
    "solve_quartic_closed_form",
    "trim_leading",
]
