# Copyright 2026 The hominv Authors
# SPDX-License-Identifier: Apache-2.0
"""Two-qubit polynomial invariants from HOM singlet projections."""

from ._hominv import *  # noqa: F401,F403
from ._hominv import (  # noqa: F401
    CatalogError,
    InsufficientStatisticsError,
    UnphysicalTripleError,
    UnresolvedTermError,
    ValidationError,
)

__version__ = "0.1.0"
