from __future__ import annotations

import os
import tempfile

# Must happen before numba is imported: lets "2" and "max" threads mean something on small machines.
os.environ.setdefault("NUMBA_NUM_THREADS", "4")
os.environ.setdefault("HITPROB_CACHE_DIR", tempfile.mkdtemp(prefix="hitprob-cache-"))
