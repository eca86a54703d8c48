"""Coupled exponent algebra for the degenerate operator.

A single admissible choice of (sigma, p) determines every other exponent in
the theory: the conjugate q = p/(p-1), the kernel weight tau = sigma/(sigma+1)
and the gained Hoelder order alpha = (2 - q - tau)/q.  Admissibility is the
strict bar p > 2 + sigma, which is equivalent to q < 2 - tau.
"""

from __future__ import annotations

from dataclasses import dataclass

_REL_EPS = 1e-12


@dataclass(frozen=True)
class ExponentSet:
    """Validated bundle (sigma, p, q, tau, alpha).

    alpha is the Hoelder exponent gained by the area operator on L^p data;
    it doubles as the exponent written beta in the semilinear statements.
    """

    sigma: float
    p: float
    q: float
    tau: float
    alpha: float

    def __post_init__(self):
        if not self.sigma > 0:
            raise ValueError(f"sigma must be positive, got {self.sigma}")
        if not self.p > 2 + self.sigma:
            raise ValueError(
                f"p must exceed 2 + sigma = {2 + self.sigma}, got p = {self.p}"
            )
        if abs(self.q - self.p / (self.p - 1)) > _REL_EPS * self.q:
            raise ValueError("q is not the Hoelder conjugate of p")
        if abs(self.tau - self.sigma / (self.sigma + 1)) > _REL_EPS:
            raise ValueError("tau does not equal sigma/(sigma+1)")
        if not 0 < self.tau < 1:
            raise ValueError(f"tau must lie in (0,1), got {self.tau}")
        # the two sides of the admissibility equivalence
        if not self.q < 2 - self.tau:
            raise ValueError(
                f"q = {self.q} must be below 2 - tau = {2 - self.tau}"
            )
        if not 0 < self.alpha < 1:
            raise ValueError(f"alpha must lie in (0,1), got {self.alpha}")

    @property
    def beta(self) -> float:
        """Alias used by the semilinear statements."""
        return self.alpha


def make_exponents(sigma: float, p: float) -> ExponentSet:
    """Build the full exponent set from sigma > 0 and p > 2 + sigma.

    Raises ValueError with the violated threshold when p is inadmissible.
    """
    sigma = float(sigma)
    p = float(p)
    if not sigma > 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    if not p > 2 + sigma:
        raise ValueError(
            f"inadmissible integrability exponent: need p > 2 + sigma "
            f"= {2 + sigma}, got p = {p}"
        )
    q = p / (p - 1)
    tau = sigma / (sigma + 1)
    alpha = (2 - q - tau) / q
    return ExponentSet(sigma=sigma, p=p, q=q, tau=tau, alpha=alpha)
