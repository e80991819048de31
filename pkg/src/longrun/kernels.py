"""Backend selection: compiled extension if importable, pure Python otherwise.

Set ``LONGRUN_BACKEND=pure`` (or ``compiled``) to force a choice; forcing
``compiled`` raises if the extension was not built.
"""

import os

_choice = os.environ.get("LONGRUN_BACKEND", "auto").lower()

if _choice == "pure":
    from longrun import _speedups_py as _impl
elif _choice == "compiled":
    from longrun import _speedups as _impl  # type: ignore[no-redef]
else:
    try:
        from longrun import _speedups as _impl  # type: ignore[no-redef]
    except ImportError:
        from longrun import _speedups_py as _impl  # type: ignore[no-redef]

BACKEND: str = _impl.BACKEND
log_prob_no_run_single = _impl.log_prob_no_run_single
log_prob_no_run_block = _impl.log_prob_no_run_block
