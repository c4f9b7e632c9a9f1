"""Kernel backend selection.

The compiled extension is used when it imports; setting the environment
variable ``PARRYINDEX_PURE_PYTHON=1`` forces the numpy fallback.
"""

import os

from . import _pykernels

python_backend = _pykernels

try:
    from . import _ckernels as compiled_backend
except ImportError:  # extension not built
    compiled_backend = None

if compiled_backend is not None and not os.environ.get("PARRYINDEX_PURE_PYTHON"):
    backend = compiled_backend
    BACKEND = "cython"
else:
    backend = python_backend
    BACKEND = "python"

suffix_array = backend.suffix_array
lcp_array = backend.lcp_array
lyndon_array = backend.lyndon_array
