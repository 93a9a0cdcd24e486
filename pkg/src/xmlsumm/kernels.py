"""Selects the compiled kernel when it is built, else the pure-Python one.

Set ``XMLSUMM_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _mmr_py

if os.environ.get("XMLSUMM_PURE_PYTHON", "") not in ("", "0"):
    _compiled = None
else:
    try:
        from . import _mmr as _compiled
    except ImportError:
        _compiled = None

if _compiled is not None:
    mmr_select = _compiled.mmr_select
    BACKEND = "compiled"
else:
    mmr_select = _mmr_py.mmr_select
    BACKEND = "python"

python_mmr_select = _mmr_py.mmr_select
compiled_mmr_select = _compiled.mmr_select if _compiled is not None else None
