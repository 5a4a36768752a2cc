"""Inter-operator RIS interference: closed-form outage/spectral efficiency
with a seeded Monte Carlo cross-check. Thin wrapper over the _risioi
extension module."""

try:
    from ._risioi import *  # noqa: F401,F403
    from ._risioi import specfun  # noqa: F401
except ImportError:  # extension built out-of-tree (ctest runs)
    from _risioi import *  # noqa: F401,F403
    from _risioi import specfun  # noqa: F401

__version__ = "0.1.0"
