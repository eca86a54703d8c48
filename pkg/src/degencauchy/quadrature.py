"""Adaptive quadrature for the weakly singular kernel integrals.

Three families are covered: the radial/line-singular scan integrals (a
power singularity at r = 0, a line singularity where gamma + r sin(theta)
vanishes, and the mixed kernel with an extra point singularity at
r e^{i theta} = 1), and the weighted planar Cauchy integral over a
rectangle in the Z plane.

The 1-D core integrates many tasks at once in synchronized rounds so numpy
does the heavy lifting.  Singularities of known strength beta are removed
by the substitution x = s + D u^m with m = 1/(1-beta), which maps a pure
power to a constant; panels are bisected in u until a per-task error budget
is met.  All reductions run in a fixed order, so results are reproducible
bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

_TINY = 1e-290
_M_CAP = 40.0
_U_BREAKS = np.array([0.0, 0.08, 0.25, 0.55, 1.0])
_CHUNK = 65536


@dataclass(frozen=True)
class QuadratureConfig:
    """Knobs for the adaptive engines.

    max_depth bounds panel bisection depth, rel_tol is the target relative
    accuracy, rule_order the Gauss-Legendre points per panel/axis, and
    edge_grading the fallback substitution exponent used for features whose
    strength is not supplied.
    """

    max_depth: int = 24
    rel_tol: float = 1e-6
    rule_order: int = 8
    edge_grading: float = 2.0

    def __post_init__(self):
        if self.max_depth < 1:
            raise ValueError("max_depth must be >= 1")
        if not 0 < self.rel_tol < 1:
            raise ValueError("rel_tol must lie in (0, 1)")
        if self.rule_order < 2:
            raise ValueError("rule_order must be >= 2")
        if self.edge_grading < 1:
            raise ValueError("edge_grading must be >= 1")


@dataclass
class QuadResult:
    """Value with an absolute error estimate and a convergence flag."""

    value: complex | float
    error: float
    converged: bool
    evals: int = 0


_GAUSS_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _gauss(n: int) -> tuple[np.ndarray, np.ndarray]:
    if n not in _GAUSS_CACHE:
        x, w = np.polynomial.legendre.leggauss(n)
        _GAUSS_CACHE[n] = (0.5 * (x + 1.0), 0.5 * w)  # on [0, 1]
    return _GAUSS_CACHE[n]


def _m_of_strength(beta: float) -> float:
    """Substitution exponent cancelling an |x-s|^(-beta) singularity."""
    beta = min(max(beta, 0.0), 0.975)
    return min(1.0 / (1.0 - beta), _M_CAP)


# ---------------------------------------------------------------------------
# batched panel machinery


class _Panels:
    """Flat arrays describing transformed panels x = s + sgn * D * u^m."""

    __slots__ = ("u_lo", "u_hi", "s", "D", "m", "sgn", "task", "depth")

    def __init__(self, u_lo, u_hi, s, D, m, sgn, task, depth=None):
        self.u_lo = np.asarray(u_lo, dtype=float)
        self.u_hi = np.asarray(u_hi, dtype=float)
        self.s = np.asarray(s, dtype=float)
        self.D = np.asarray(D, dtype=float)
        self.m = np.asarray(m, dtype=float)
        self.sgn = np.asarray(sgn, dtype=float)
        self.task = np.asarray(task, dtype=np.intp)
        if depth is None:
            depth = np.zeros(len(self.u_lo), dtype=np.int32)
        self.depth = depth

    def __len__(self):
        return len(self.u_lo)


def _panels_from_slots(a, b, pos, m, n_tasks):
    """Panels tiling [a, b] from feature slots.

    pos, m: (n_slots, n_tasks) feature positions and substitution exponents
    (m = 1 for a plain breakpoint).  Each feature owns the two intervals
    reaching halfway to its neighboring features (all the way to a domain
    endpoint), covered in the transformed u variable by _U_BREAKS.
    Coincident features are disambiguated by slot index so the tiling never
    overlaps.
    """
    S = pos.shape[0]
    a_arr = np.full(n_tasks, a, dtype=float)
    b_arr = np.full(n_tasks, b, dtype=float)
    pos = np.clip(pos, a, b)

    u0 = _U_BREAKS[:-1]
    u1 = _U_BREAKS[1:]
    k = len(u0)
    task_row = np.arange(n_tasks)

    chunks = []
    for i in range(S):
        p = pos[i]
        left = a_arr.copy()
        right = b_arr.copy()
        left_is_feat = np.zeros(n_tasks, dtype=bool)
        right_is_feat = np.zeros(n_tasks, dtype=bool)
        for j in range(S):
            if j == i:
                continue
            qj = pos[j]
            lower = (qj < p) | ((qj == p) & (j < i))
            upd = lower & (qj >= left)
            left = np.where(upd, qj, left)
            left_is_feat |= upd
            upd = (~lower) & (qj <= right)
            right = np.where(upd, qj, right)
            right_is_feat |= upd
        D_left = (p - left) * np.where(left_is_feat, 0.5, 1.0)
        D_right = (right - p) * np.where(right_is_feat, 0.5, 1.0)
        for D, sgn in ((D_left, -1.0), (D_right, 1.0)):
            chunks.append((
                np.broadcast_to(u0[:, None], (k, n_tasks)),
                np.broadcast_to(u1[:, None], (k, n_tasks)),
                np.broadcast_to(p, (k, n_tasks)),
                np.broadcast_to(D, (k, n_tasks)),
                np.broadcast_to(m[i], (k, n_tasks)),
                np.full((k, n_tasks), sgn),
                np.broadcast_to(task_row, (k, n_tasks)),
            ))
    cols = [np.concatenate([np.ravel(c[j]) for c in chunks]) for j in range(7)]
    keep = cols[3] > 0  # drop zero-extent sides
    return _Panels(*(c[keep] for c in cols))


_PANEL_CAP = 400_000


def _integrate_tasks(f, panels: _Panels, n_tasks: int, cfg: QuadratureConfig):
    """Run the synchronized adaptive rounds for all tasks at once.

    f(x, task, s, off) -> integrand values, vectorized; must return finite
    values everywhere (callers clamp denominators).  s is the feature
    position the enclosing panel is attached to and off the exact offset
    x - s, so integrands can evaluate singular factors without cancellation.
    Returns per-task value, error, convergence flags and the evaluation
    count.
    """
    gx, gw = _gauss(cfg.rule_order)
    acc_val = np.zeros(n_tasks)
    acc_err = np.zeros(n_tasks)
    acc_abs = np.zeros(n_tasks)
    n_accepted = np.zeros(n_tasks, dtype=np.intp)
    evals = 0

    def panel_sums(p, lo, hi):
        nonlocal evals
        width = hi - lo
        u = lo[:, None] + width[:, None] * gx[None, :]
        off = p.sgn[:, None] * p.D[:, None] * u ** p.m[:, None]
        x = p.s[:, None] + off
        jac = p.D[:, None] * p.m[:, None] * u ** (p.m[:, None] - 1.0)
        rep = np.repeat(p.task, len(gx))
        s_b = np.repeat(p.s, len(gx))
        vals = f(x.ravel(), rep, s_b, off.ravel()).reshape(x.shape)
        evals += x.size
        term = vals * jac
        return (term @ gw) * width, (np.abs(term) @ gw) * width

    for _ in range(cfg.max_depth + 2):
        if len(panels) == 0:
            break
        um = 0.5 * (panels.u_lo + panels.u_hi)
        whole, _ = panel_sums(panels, panels.u_lo, panels.u_hi)
        fine_l, abs_l = panel_sums(panels, panels.u_lo, um)
        fine_r, abs_r = panel_sums(panels, um, panels.u_hi)
        fine = fine_l + fine_r
        fine_abs = abs_l + abs_r
        err = np.abs(whole - fine)

        tot = acc_val.copy()
        np.add.at(tot, panels.task, fine)
        tot_abs = acc_abs.copy()
        np.add.at(tot_abs, panels.task, np.abs(fine))
        scale = np.maximum(np.abs(tot), 1e-2 * tot_abs) + _TINY
        n_active = np.bincount(panels.task, minlength=n_tasks)
        budget = cfg.rel_tol * scale / np.maximum(n_active + n_accepted, 8)

        frozen = (panels.depth >= cfg.max_depth) | (len(panels) > _PANEL_CAP)
        noise_floor = err <= 1e-14 * fine_abs
        accept = (err <= budget[panels.task]) | noise_floor | frozen
        np.add.at(acc_val, panels.task[accept], fine[accept])
        np.add.at(acc_err, panels.task[accept], err[accept])
        np.add.at(acc_abs, panels.task[accept], np.abs(fine[accept]))
        np.add.at(n_accepted, panels.task[accept], 1)

        split = ~accept
        if not split.any():
            break
        panels = _Panels(
            np.concatenate([panels.u_lo[split], um[split]]),
            np.concatenate([um[split], panels.u_hi[split]]),
            np.tile(panels.s[split], 2),
            np.tile(panels.D[split], 2),
            np.tile(panels.m[split], 2),
            np.tile(panels.sgn[split], 2),
            np.tile(panels.task[split], 2),
            np.tile(panels.depth[split] + 1, 2),
        )

    scale = np.maximum(np.abs(acc_val), 1e-2 * acc_abs) + _TINY
    converged = acc_err <= 10.0 * cfg.rel_tol * scale
    return acc_val, acc_err, converged, evals


def quad1d(f, a: float, b: float, cfg: QuadratureConfig,
           features=(), splits=()) -> QuadResult:
    """Adaptive integral of a scalar integrand over [a, b].

    features: iterable of (position, strength) pairs; strength beta in
    [0, 1) selects the cancelling substitution, None falls back to
    cfg.edge_grading.  splits: plain breakpoints.
    """
    slots = []
    for pos, beta in features:
        m = _m_of_strength(beta) if beta is not None else cfg.edge_grading
        slots.append((pos, m))
    for pos in splits:
        slots.append((pos, 1.0))
    if not slots:
        slots.append((0.5 * (a + b), 1.0))
    pos = np.array([[p] for p, _ in slots], dtype=float)
    m = np.array([[mm] for _, mm in slots], dtype=float)
    panels = _panels_from_slots(a, b, pos, m, 1)
    val, err, conv, evals = _integrate_tasks(
        lambda x, task, s, off: np.asarray(f(x), dtype=float), panels, 1, cfg)
    return QuadResult(float(val[0]), float(err[0]), bool(conv[0]), evals)


# ---------------------------------------------------------------------------
# the scan integrals


def _inner_cfg(cfg: QuadratureConfig) -> QuadratureConfig:
    return replace(cfg, rel_tol=cfg.rel_tol / 3.0)


def integrate_I(R: float, gamma: float, tau: float, q: float,
                cfg: QuadratureConfig) -> QuadResult:
    """Integral of 1/(|gamma + r sin(theta)|^tau r^(q-1)) over
    (0,R) x (0,2pi)."""
    if not R > 0:
        raise ValueError("R must be positive")
    if not 0 < tau < 1:
        raise ValueError("tau must lie in (0,1)")
    if not 1 < q < 2 - tau:
        raise ValueError(f"need 1 < q < 2 - tau = {2 - tau}, got q = {q}")
    g = abs(float(gamma))
    icfg = _inner_cfg(cfg)
    inner_ok = [True]
    inner_evals = [0]
    m0 = _m_of_strength((q - 1.0) + (tau if g == 0 else 0.0))
    m_line = _m_of_strength(tau)

    def F(thetas):
        thetas = np.asarray(thetas, dtype=float)
        n = len(thetas)
        sin_t = np.sin(thetas)
        rstar = np.where(sin_t < 0, g / np.maximum(-sin_t, _TINY), 0.0)
        active = (g > 0) & (sin_t < 0) & (rstar < R)
        rstar = np.where(active, rstar, 0.5 * R)
        pos = np.vstack([np.zeros(n), rstar])
        m = np.vstack([np.full(n, m0), np.where(active, m_line, 1.0)])
        panels = _panels_from_slots(0.0, R, pos, m, n)

        def fi(r, task, s, off):
            sn = sin_t[task]
            # at the line-zero feature the singular factor is exactly
            # off * sin(theta); elsewhere evaluate directly
            on_line = active[task] & (s == rstar[task])
            arg = np.where(on_line, off * sn, g + r * sn)
            den = np.maximum(np.abs(arg), _TINY) ** tau
            return 1.0 / (den * np.maximum(r, _TINY) ** (q - 1.0))

        val, _, conv, ev = _integrate_tasks(fi, panels, n, icfg)
        inner_ok[0] = inner_ok[0] and bool(conv.all())
        inner_evals[0] += ev
        return val

    features = [(0.0, tau), (math.pi, tau), (2 * math.pi, tau)]
    splits = [math.pi / 2, 3 * math.pi / 2]
    if 0 < g <= R:
        asn = math.asin(min(g / R, 1.0))
        splits += [math.pi + asn, 2 * math.pi - asn]
    res = quad1d(F, 0.0, 2 * math.pi, cfg, features=features, splits=splits)
    return QuadResult(res.value, res.error,
                      res.converged and inner_ok[0],
                      res.evals + inner_evals[0])


def integrate_delta(delta: float, R: float, gamma: float, tau: float,
                    m: float, cfg: QuadratureConfig) -> QuadResult:
    """Integral of 1/(|gamma + r sin(theta)|^tau r^(m+1)) over
    (delta,R) x (0,2pi)."""
    if not 0 < delta < R:
        raise ValueError("need 0 < delta < R")
    if not 0 < tau < 1:
        raise ValueError("tau must lie in (0,1)")
    if not m > 0:
        raise ValueError("m must be positive")
    if not 0 <= gamma < R:
        raise ValueError("need 0 <= gamma < R")
    g = float(gamma)
    icfg = _inner_cfg(cfg)
    inner_ok = [True]
    inner_evals = [0]
    m_line = _m_of_strength(tau)
    m_exp = float(m)

    def F(thetas):
        thetas = np.asarray(thetas, dtype=float)
        n = len(thetas)
        sin_t = np.sin(thetas)
        rstar = np.where(sin_t < 0, g / np.maximum(-sin_t, _TINY), 0.0)
        active = (g > 0) & (sin_t < 0) & (rstar > delta) & (rstar < R)
        pos = np.vstack([np.where(active, rstar, 0.5 * (delta + R))])
        mm = np.vstack([np.where(active, m_line, 1.0)])
        panels = _panels_from_slots(delta, R, pos, mm, n)

        def fi(r, task):
            den = np.maximum(np.abs(g + r * sin_t[task]), _TINY) ** tau
            return 1.0 / (den * r ** (m_exp + 1.0))

        val, _, conv, ev = _integrate_tasks(fi, panels, n, icfg)
        inner_ok[0] = inner_ok[0] and bool(conv.all())
        inner_evals[0] += ev
        return val

    features = [(0.0, tau), (math.pi, tau), (2 * math.pi, tau)]
    splits = [math.pi / 2, 3 * math.pi / 2]
    if 0 < g < R:
        asn = math.asin(min(g / R, 1.0))
        splits += [math.pi + asn, 2 * math.pi - asn]
    res = quad1d(F, 0.0, 2 * math.pi, cfg, features=features, splits=splits)
    return QuadResult(res.value, res.error,
                      res.converged and inner_ok[0],
                      res.evals + inner_evals[0])


def integrate_H(R: float, gamma: float, tau: float, q: float, phi: float,
                cfg: QuadratureConfig) -> QuadResult:
    """The mixed-kernel integral of r^(1-q) / (|gamma + r sin(theta+phi)|^tau
    |r e^{i theta} - 1|^q) over (0,R) x (0,2pi)."""
    if not R > 0:
        raise ValueError("R must be positive")
    if gamma < 0:
        raise ValueError("gamma must be >= 0")
    if not 0 < tau < 1:
        raise ValueError("tau must lie in (0,1)")
    if not 1 <= q < 2 - tau:
        raise ValueError(f"need 1 <= q < 2 - tau = {2 - tau}, got q = {q}")
    if not 0 <= phi <= math.pi:
        raise ValueError("phi must lie in [0, pi]")
    g = float(gamma)
    icfg = _inner_cfg(cfg)
    inner_ok = [True]
    inner_evals = [0]

    m0 = _m_of_strength((q - 1.0) + (tau if g == 0 else 0.0))
    m_line = _m_of_strength(tau)
    m_peak = 8.0  # zoom exponent resolving the point-kernel peak near r = 1
    peak_active = R >= 0.6
    s_peak = min(1.0, R)

    def F(thetas):
        thetas = np.asarray(thetas, dtype=float)
        n = len(thetas)
        sin_tp = np.sin(thetas + phi)
        rstar = np.where(sin_tp < 0, g / np.maximum(-sin_tp, _TINY), 0.0)
        active = (g > 0) & (sin_tp < 0) & (rstar < R)
        pos = np.vstack([
            np.zeros(n),
            np.full(n, s_peak if peak_active else 0.5 * R),
            np.where(active, rstar, 0.4 * R),
        ])
        m = np.vstack([
            np.full(n, m0),
            np.full(n, m_peak if peak_active else 1.0),
            np.where(active, m_line, 1.0),
        ])
        panels = _panels_from_slots(0.0, R, pos, m, n)
        sin_half_sq = np.sin(0.5 * thetas) ** 2

        def fi(r, task):
            line = np.maximum(np.abs(g + r * sin_tp[task]), _TINY) ** tau
            point_sq = (r - 1.0) ** 2 + 4.0 * r * sin_half_sq[task]
            point = np.maximum(point_sq, _TINY) ** (0.5 * q)
            return np.maximum(r, _TINY) ** (1.0 - q) / (line * point)

        val, _, conv, ev = _integrate_tasks(fi, panels, n, icfg)
        inner_ok[0] = inner_ok[0] and bool(conv.all())
        inner_evals[0] += ev
        return val

    line_on_axis = abs(math.sin(phi)) < 1e-12 and g == 0
    beta_pt = q - 1.0 if (peak_active and q > 1) else 0.0
    if line_on_axis:
        beta_pt += tau
    features = [(0.0, min(beta_pt, 0.97)), (2 * math.pi, min(beta_pt, 0.97))]
    for k in range(4):
        th = k * math.pi - phi
        if 1e-12 < th < 2 * math.pi - 1e-12:
            features.append((th, tau if g == 0 else 0.0))
    res = quad1d(F, 0.0, 2 * math.pi, cfg, features=features,
                 splits=[math.pi / 2, math.pi, 3 * math.pi / 2])
    return QuadResult(res.value, res.error,
                      res.converged and inner_ok[0],
                      res.evals + inner_evals[0])


# ---------------------------------------------------------------------------
# weight moments and the closed-form rectangle moment of the Cauchy kernel


def weight_mass(e0, e1, tau: float):
    """Integral of |eta|^(-tau) over [e0, e1]; the interval must not straddle
    zero (cells of a valid grid never do)."""
    e0 = np.asarray(e0, dtype=float)
    e1 = np.asarray(e1, dtype=float)
    lo = np.minimum(np.abs(e0), np.abs(e1))
    hi = np.maximum(np.abs(e0), np.abs(e1))
    return (hi ** (1.0 - tau) - lo ** (1.0 - tau)) / (1.0 - tau)


def weight_centroid(e0, e1, tau: float):
    """First moment point of |eta|^(-tau) on [e0, e1] (signed)."""
    e0 = np.asarray(e0, dtype=float)
    e1 = np.asarray(e1, dtype=float)
    lo = np.minimum(np.abs(e0), np.abs(e1))
    hi = np.maximum(np.abs(e0), np.abs(e1))
    num = hi ** (2.0 - tau) - lo ** (2.0 - tau)
    den = hi ** (1.0 - tau) - lo ** (1.0 - tau)
    sgn = np.sign(e0 + e1)
    with np.errstate(invalid="ignore", divide="ignore"):
        c = (1.0 - tau) / (2.0 - tau) * num / den
    c = np.where(den > 0, c, 0.5 * (lo + hi))
    return sgn * c


def _corner_F(X, Y):
    X, Y = np.broadcast_arrays(np.asarray(X, dtype=float),
                               np.asarray(Y, dtype=float))
    R2 = X * X + Y * Y
    safe = R2 > 0
    L = np.where(safe, np.log(np.where(safe, R2, 1.0)), 0.0)
    ratio = np.divide(Y, X, out=np.zeros_like(R2), where=X != 0)
    A = np.where(X != 0, np.arctan(ratio), 0.0)
    return 0.5 * Y * L - Y + X * A


def cauchy_cell_moment(x0, x1, e0, e1, z):
    """Closed form of the rectangle integral of 1/(zeta - z) d xi d eta.

    Valid for z inside, on the boundary of, or outside the cell; vectorized
    over any broadcastable combination of corners and targets.
    """
    zr = np.real(z)
    zi = np.imag(z)
    X0, X1 = np.asarray(x0) - zr, np.asarray(x1) - zr
    Y0, Y1 = np.asarray(e0) - zi, np.asarray(e1) - zi
    re = (_corner_F(X1, Y1) - _corner_F(X0, Y1)
          - _corner_F(X1, Y0) + _corner_F(X0, Y0))
    im = -(_corner_F(Y1, X1) - _corner_F(Y1, X0)
           - _corner_F(Y0, X1) + _corner_F(Y0, X0))
    return re + 1j * im


# ---------------------------------------------------------------------------
# the weighted planar Cauchy engine (single target)


def _bilinear(w, xq, eq):
    """Bilinear interpolation of a GridFunction at scattered points."""
    gx = w.grid.x
    ge = w.grid.t
    v = w.values
    ix = np.clip(np.searchsorted(gx, xq) - 1, 0, len(gx) - 2)
    ie = np.clip(np.searchsorted(ge, eq) - 1, 0, len(ge) - 2)
    fx = np.clip((xq - gx[ix]) / (gx[ix + 1] - gx[ix]), 0.0, 1.0)
    fe = np.clip((eq - ge[ie]) / (ge[ie + 1] - ge[ie]), 0.0, 1.0)
    return ((1 - fx) * (1 - fe) * v[ix, ie]
            + fx * (1 - fe) * v[ix + 1, ie]
            + (1 - fx) * fe * v[ix, ie + 1]
            + fx * fe * v[ix + 1, ie + 1])


def integrate_weighted_cauchy(w, z: complex, tau: float,
                              cfg: QuadratureConfig,
                              kernel_factor=None) -> QuadResult:
    """Integral of w(zeta) |eta|^(-tau) / (zeta - z) over the grid rectangle.

    The grid of w is read as a tensor grid in the Z plane (its t axis is the
    eta axis).  Cells far from z in the relative sense use a tensor Gauss
    rule with the |eta| weight removed exactly by a power substitution on
    rows touching eta = 0; cells near z are bisected until they are far or
    contain z and are small enough for the closed-form kernel moment against
    the cell-averaged weight.  kernel_factor(zeta), when given, multiplies
    the integrand (used for post-composed first integrals).
    """
    if not 0 <= tau < 1:
        raise ValueError("tau must lie in [0, 1)")
    grid = w.grid
    gx, gw = _gauss(cfg.rule_order)
    z = complex(z)

    xe = grid.x
    ee = grid.t
    XL, EL = np.meshgrid(xe[:-1], ee[:-1], indexing="ij")
    XH, EH = np.meshgrid(xe[1:], ee[1:], indexing="ij")
    cxlo, cxhi = XL.ravel(), XH.ravel()
    celo, cehi = EL.ravel(), EH.ravel()

    domain_diam = math.hypot(xe[-1] - xe[0], ee[-1] - ee[0])
    tiny_diam = max(cfg.rel_tol * 1e-2 * domain_diam, 1e-13 * domain_diam)
    m_sub = _m_of_strength(tau) if tau > 0 else 1.0

    total = 0.0 + 0.0j
    total_err = 0.0
    evals = 0
    hit_weighted_target_cell = False

    def gauss_cells(sxlo, sxhi, selo, sehi, dist, diam):
        """Tensor Gauss over a batch of cells, exact eta substitution on
        rows touching zero.  Returns (values, error estimates)."""
        nonlocal evals
        span = sehi - selo
        touches0 = (selo == 0.0) | (sehi == 0.0)
        base = np.where(selo == 0.0, 0.0, sehi)
        sgn_e = np.where(selo == 0.0, 1.0, -1.0)
        u = gx[None, :]
        if tau > 0:
            eta_z = base[:, None] + sgn_e[:, None] * span[:, None] * u ** m_sub
            jac_z = span[:, None] * m_sub * u ** (m_sub - 1.0)
        else:
            eta_z = None
        eta_p = selo[:, None] + span[:, None] * u
        jac_p = np.broadcast_to(span[:, None], eta_p.shape)
        if eta_z is not None:
            eta = np.where(touches0[:, None], eta_z, eta_p)
            jac = np.where(touches0[:, None], jac_z, jac_p)
        else:
            eta, jac = eta_p, jac_p
        if tau > 0:
            wgt = np.abs(eta) ** (-tau)
            wgt = np.where(np.isfinite(wgt), wgt, 0.0)
        else:
            wgt = np.ones_like(eta)
        xs = sxlo[:, None] + (sxhi - sxlo)[:, None] * gx[None, :]
        zeta = xs[:, None, :] + 1j * eta[:, :, None]
        ker = 1.0 / (zeta - z)
        if kernel_factor is not None:
            ker = ker * kernel_factor(zeta)
        shape = zeta.shape
        fsub = _bilinear(w, np.broadcast_to(xs[:, None, :], shape).ravel(),
                         np.broadcast_to(eta[:, :, None], shape).ravel()
                         ).reshape(shape)
        evals += zeta.size
        inner_x = np.einsum("cex,x->ce", ker * fsub, gw) * (sxhi - sxlo)[:, None]
        vals = np.einsum("ce,e->c", inner_x * (wgt * jac), gw)
        with np.errstate(divide="ignore"):
            ratio = np.where(dist > 0, diam / (4.0 * dist), 1.0)
        errs = np.abs(vals) * np.minimum(ratio ** (2 * cfg.rule_order), 1.0)
        return vals, errs

    depth = 0
    while len(cxlo):
        dx = cxhi - cxlo
        de = cehi - celo
        diam = np.hypot(dx, de)
        ddx = np.maximum(np.maximum(cxlo - z.real, z.real - cxhi), 0.0)
        dde = np.maximum(np.maximum(celo - z.imag, z.imag - cehi), 0.0)
        dist = np.hypot(ddx, dde)
        far = diam <= 0.8 * dist
        stop = (~far) & ((diam <= tiny_diam) | (depth >= cfg.max_depth))

        idx_far = np.nonzero(far)[0]
        for start in range(0, len(idx_far), _CHUNK):
            sel = idx_far[start:start + _CHUNK]
            vals, errs = gauss_cells(cxlo[sel], cxhi[sel], celo[sel],
                                     cehi[sel], dist[sel], diam[sel])
            total += complex(np.sum(vals))
            total_err += float(np.sum(errs))

        if stop.any():
            sxlo, sxhi = cxlo[stop], cxhi[stop]
            selo, sehi = celo[stop], cehi[stop]
            xc = 0.5 * (sxlo + sxhi)
            ec = 0.5 * (selo + sehi)
            fc = _bilinear(w, xc, ec)
            mass = weight_mass(selo, sehi, tau)
            avg_w = mass / np.maximum(sehi - selo, _TINY)
            mom = cauchy_cell_moment(sxlo, sxhi, selo, sehi, z)
            kf = 1.0
            if kernel_factor is not None:
                kf = kernel_factor(np.full(len(sxlo), z, dtype=complex))
            vals = fc * avg_w * mom * kf
            contains = dist[stop] == 0.0
            errs = np.abs(vals) * np.where(contains, 0.5, 1.0)
            total += complex(np.sum(vals))
            total_err += float(np.sum(errs))
            if tau > 0 and np.any(((selo == 0.0) | (sehi == 0.0)) & contains):
                hit_weighted_target_cell = True

        keep = ~(far | stop)
        if not keep.any():
            break
        kxlo, kxhi = cxlo[keep], cxhi[keep]
        kelo, kehi = celo[keep], cehi[keep]
        xm = 0.5 * (kxlo + kxhi)
        em = 0.5 * (kelo + kehi)
        cxlo = np.concatenate([kxlo, xm, kxlo, xm])
        cxhi = np.concatenate([xm, kxhi, xm, kxhi])
        celo = np.concatenate([kelo, kelo, em, em])
        cehi = np.concatenate([em, em, kehi, kehi])
        depth += 1

    scale = max(abs(total), _TINY)
    ok = total_err <= 50.0 * cfg.rel_tol * scale + 1e-12
    if hit_weighted_target_cell:
        # weight and kernel singularities coincide; accuracy limited by depth
        ok = ok and (2.0 ** (-cfg.max_depth * (1.0 - tau)) < 10 * cfg.rel_tol)
    return QuadResult(total, total_err, bool(ok), evals)
