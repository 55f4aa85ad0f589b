import os
import sys

# fall back to the in-tree build when the package is not installed
try:
    import safesynth  # noqa: F401
except ImportError:
    here = os.path.dirname(os.path.abspath(__file__))
    sys.path.insert(0, os.path.join(here, "..", "..", "build", "python_pkg"))
