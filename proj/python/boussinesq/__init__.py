# Copyright 2026 The Boussinesq Spectral Authors
# SPDX-License-Identifier: Apache-2.0
"""Pseudospectral Boussinesq solver on the periodic torus."""

from ._core import *  # noqa: F401,F403
from ._core import (  # noqa: F401
    ConfigError,
    Grid,
    NonfiniteStateError,
    PhysicalParams,
    ScalarField,
    SnapshotError,
    State,
    StepperConfig,
    VectorField,
)

__version__ = "0.1.0"
