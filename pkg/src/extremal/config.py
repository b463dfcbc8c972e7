"""Default sizes, precisions and truncations in one place.

Every entry can be overridden by an environment variable ``EXTREMAL_<NAME>``
(upper case), and the command line flags override both.  ``None`` means the
value is derived from the problem size by the owning routine.
"""

import os

ENV_PREFIX = "EXTREMAL_"

DEFAULTS = {
    "terms": 10,  # zk: highest exponent printed
    "d": 5,  # faber: largest d
    "prec_bits": None,  # numerics: working precision in bits
    "cmax": None,  # rademacher truncation index
    "format": "json",
    "omega_size": 8,  # checks omega: bi-order M
    "faber_size": 20,  # checks faber/hecke: largest d
    "hecke_terms": 60,
    "rademacher_jd_size": 8,  # checks rademacher-jd: 1 <= d, n <= size
    "corollary2_size": 5,  # checks corollary2: k <= size
    "corollary2_terms": 10,
}


def _parse(raw, default):
    if isinstance(default, int) or default is None:
        try:
            return int(raw)
        except ValueError:
            return raw
    return raw


def get(name):
    """Current default for ``name``, honouring ``EXTREMAL_<NAME>``."""
    default = DEFAULTS[name]
    raw = os.environ.get(ENV_PREFIX + name.upper())
    if raw is None or raw == "":
        return default
    return _parse(raw, default)


def describe():
    lines = []
    for name, value in DEFAULTS.items():
        lines.append(f"  {ENV_PREFIX}{name.upper():<22} default {value if value is not None else 'auto'}")
    return "\n".join(lines)
