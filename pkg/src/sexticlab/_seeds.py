"""Float constants feeding report-only heuristics, in one auditable place.

Certified predicates (gcd, definiteness, perfect squares, on-curve checks,
witness values) must never read these.  The perturbed() context manager
jitters every seed; the exactness audit runs the certificate pipeline under
it and asserts byte-identical certificates.
"""

from __future__ import annotations

import contextlib

_DEFAULTS = {
    # exponent slack in the reported dirichlet growth ratio
    "growth_epsilon": 0.1,
    # multiplier on the empirical ratio reported by the growth diagnostic
    "diagnostic_scale": 1.0,
}

_current = dict(_DEFAULTS)


def get(name: str) -> float:
    return _current[name]


@contextlib.contextmanager
def perturbed(factor: float = 1.37):
    """Scale every float seed by `factor` (and shift slightly) for the
    duration of the block."""
    saved = dict(_current)
    try:
        for k in _current:
            _current[k] = _current[k] * factor + 1e-3
        yield dict(_current)
    finally:
        _current.clear()
        _current.update(saved)
