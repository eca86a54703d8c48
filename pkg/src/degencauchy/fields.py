"""The model vector field L = d/dt - i|t|^sigma d/dx, its first integral,
optional holomorphic post-composition, and discrete application of L.

The first integral of the model field is Z(x,t) = x + i t|t|^sigma/(sigma+1);
a post-composition H (complex polynomial with H' != 0 on the working region)
yields the more general first integral H(Z).  sigma = 0 is allowed as the
elliptic sanity mode, where L is the Cauchy-Riemann operator and Z = x + it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grids import Domain, Grid, GridFunction, make_grid

_HMIN_FLOOR = 1e-8


@dataclass(frozen=True)
class VectorFieldSpec:
    """Model field of type sigma, optionally post-composed with H.

    post_map holds complex polynomial coefficients in ascending order;
    h_min records the smallest sampled |H'| over the validation grid.
    """

    sigma: float
    post_map: tuple[complex, ...] | None = None
    h_min: float | None = None

    def __post_init__(self):
        if self.sigma < 0:
            raise ValueError("sigma must be >= 0")

    @property
    def tau(self) -> float:
        return self.sigma / (self.sigma + 1.0)

    @property
    def has_post_map(self) -> bool:
        return self.post_map is not None


def make_field_spec(sigma: float, post_map=None, domain: Domain | None = None,
                    samples: int = 64) -> VectorFieldSpec:
    """Construct a field spec, validating |H'| > 0 when a post-map is given.

    A post-map requires a domain: |H'(Z(x,t))| is sampled on a coarse grid
    over it and the construction fails if the minimum drops below 1e-8.
    """
    sigma = float(sigma)
    if post_map is None:
        return VectorFieldSpec(sigma=sigma)
    coeffs = tuple(complex(c) for c in post_map)
    if len(coeffs) < 2 or all(c == 0 for c in coeffs[1:]):
        raise ValueError("post_map must be a non-constant polynomial")
    if domain is None:
        raise ValueError("a domain is required to validate the post-map")
    grid = make_grid(domain, samples, samples + 1,
                     grading=max(1.0, 1.0 + sigma))
    X, T = grid.meshgrid()
    z = _eval_Z_base(sigma, X, T)
    dcoeffs = np.polynomial.polynomial.polyder(np.asarray(coeffs))
    h_min = float(np.abs(np.polynomial.polynomial.polyval(z, dcoeffs)).min())
    if h_min < _HMIN_FLOOR:
        raise ValueError(
            f"post-map derivative degenerates on the domain: min |H'| = {h_min}"
        )
    return VectorFieldSpec(sigma=sigma, post_map=coeffs, h_min=h_min)


def eta_of_t(sigma: float, t):
    """The imaginary part of the base first integral: t|t|^sigma/(sigma+1)."""
    t = np.asarray(t, dtype=float)
    return t * np.abs(t) ** sigma / (sigma + 1.0)


def t_of_eta(sigma: float, eta):
    """Inverse of eta_of_t."""
    eta = np.asarray(eta, dtype=float)
    return np.sign(eta) * ((sigma + 1.0) * np.abs(eta)) ** (1.0 / (sigma + 1.0))


def _eval_Z_base(sigma: float, x, t):
    return np.asarray(x, dtype=float) + 1j * eta_of_t(sigma, t)


def eval_post_map(spec: VectorFieldSpec, z):
    if not spec.has_post_map:
        return z
    return np.polynomial.polynomial.polyval(z, np.asarray(spec.post_map))


def eval_post_map_derivative(spec: VectorFieldSpec, z):
    if not spec.has_post_map:
        return np.ones_like(np.asarray(z, dtype=complex))
    dcoeffs = np.polynomial.polynomial.polyder(np.asarray(spec.post_map))
    return np.polynomial.polynomial.polyval(z, dcoeffs)


def eval_Z(spec: VectorFieldSpec, x, t):
    """First integral H(x + i t|t|^sigma/(sigma+1)), H = identity if absent."""
    return eval_post_map(spec, _eval_Z_base(spec.sigma, x, t))


def eval_Z_gridfunction(spec: VectorFieldSpec, grid: Grid) -> GridFunction:
    X, T = grid.meshgrid()
    return GridFunction(grid, eval_Z(spec, X, T))


def coefficient_abs_t_sigma(spec: VectorFieldSpec, t):
    """|t|^sigma with the elliptic convention |0|^0 = 1."""
    t = np.asarray(t, dtype=float)
    if spec.sigma == 0:
        return np.ones_like(t)
    return np.abs(t) ** spec.sigma


def dZ_dx(spec: VectorFieldSpec, x, t):
    """d/dx of the first integral (H'(Z_base) when a post-map is present)."""
    return eval_post_map_derivative(spec, _eval_Z_base(spec.sigma, x, t))


def dZ_dt(spec: VectorFieldSpec, x, t):
    """d/dt of the first integral: i|t|^sigma times the post-map factor."""
    base = 1j * coefficient_abs_t_sigma(spec, t)
    return base * eval_post_map_derivative(spec, _eval_Z_base(spec.sigma, x, t))


def _first_derivative_nonuniform(values: np.ndarray, nodes: np.ndarray,
                                 axis: int) -> np.ndarray:
    """Second-order first derivative along ``axis`` on nonuniform nodes.

    Central three-point stencils in the interior, one-sided second-order
    stencils at the two boundary rows.
    """
    v = np.moveaxis(values, axis, 0)
    n = len(nodes)
    if n < 3:
        raise ValueError("need at least 3 nodes along the axis")
    out = np.empty_like(v)
    h = np.diff(nodes)

    h1 = h[:-1][:, None]
    h2 = h[1:][:, None]
    out[1:-1] = (
        -h2 / (h1 * (h1 + h2)) * v[:-2]
        + (h2 - h1) / (h1 * h2) * v[1:-1]
        + h1 / (h2 * (h1 + h2)) * v[2:]
    )

    a, b = h[0], h[1]
    out[0] = (
        -(2 * a + b) / (a * (a + b)) * v[0]
        + (a + b) / (a * b) * v[1]
        - a / (b * (a + b)) * v[2]
    )
    a, b = h[-1], h[-2]
    out[-1] = (
        (2 * a + b) / (a * (a + b)) * v[-1]
        - (a + b) / (a * b) * v[-2]
        + a / (b * (a + b)) * v[-3]
    )
    return np.moveaxis(out, 0, axis)


def apply_L(spec: VectorFieldSpec, u: GridFunction) -> GridFunction:
    """Discrete L u = u_t - i|t|^sigma u_x on the grid of u.

    Spacing-aware stencils handle the graded t axis; NaN samples propagate
    into every stencil that touches them, which downstream residual checks
    use to skip masked neighborhoods.
    """
    grid = u.grid
    if grid.nx < 3 or grid.nt < 3:
        raise ValueError("apply_L needs at least 3 nodes per axis")
    du_dt = _first_derivative_nonuniform(u.values, grid.t, axis=1)
    du_dx = _first_derivative_nonuniform(u.values, grid.x, axis=0)
    coef = coefficient_abs_t_sigma(spec, grid.t)[None, :]
    return GridFunction(grid, du_dt - 1j * coef * du_dx)
