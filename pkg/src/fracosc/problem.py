"""Bundle of basis, coefficients and nonlinearity defining one model run."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from fracosc.basis import SpectralBasis
from fracosc.coeffs import MuModel, OmegaModel
from fracosc.nonlin import NonlinearitySpec

__all__ = ["Problem"]


@dataclass(frozen=True)
class Problem:
    basis: SpectralBasis
    omega: OmegaModel
    mu: MuModel
    nonlin: NonlinearitySpec

    def linear(self) -> bool:
        return self.nonlin.beta == 0.0 and self.nonlin.lambda_f == 0.0
