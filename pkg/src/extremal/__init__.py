"""Witten's extremal partition functions Z_k(q): exact q-series, Rademacher sums,
traces of singular moduli, and Ramanujan-type congruences."""

from .series import (
    NotInvertibleError,
    PrecisionError,
    QSeries,
    ResidueSeries,
    UnsupportedEtaProduct,
    e2_series,
    eta_product,
    partition_numbers,
    restricted_partition_series,
    sigma_series,
)

__version__ = "0.1.0"
