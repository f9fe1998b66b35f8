"""Front-fixing finite-difference scheme for the fractional Stefan problem.

The substitution ``u = x / (p * tau**(alpha/2))`` pins the front at ``u = 1``.
The scheme marches the auxiliary unknown ``cbar = c * tau**(-alpha)`` on a
uniform ``(m+1) x (n+1)`` mesh.  The Riemann-Liouville history integral is
discretised by a blend of the fractional trapezoidal rule (share ``phi``) and
the fractional rectangle rule (share ``1 - phi``).  Each time layer is then a
tridiagonal linear system.
"""

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .special import gamma_fn

__all__ = [
    "MeshSpec",
    "SolutionGrid",
    "PhysicalGrid",
    "Tridiagonal",
    "ZeroPivotError",
    "build_mesh",
    "weight_q",
    "weight_r",
    "weight_w",
    "r_weights",
    "w_weights",
    "assemble_system",
    "solve_tridiagonal",
    "march",
    "recover",
]

DEFAULT_TAU0_FACTOR = 1e-3


class ZeroPivotError(ArithmeticError):
    pass


@dataclass(frozen=True)
class MeshSpec:
    """Uniform mesh on ``u in [0, 1]``, ``tau in [0, tau_star]``.

    ``tau_star = p**(-2/alpha)`` is the time at which the front reaches the
    far edge of the slab.  Node ``j = 0`` sits at the small positive time
    ``tau0`` instead of zero.
    """

    m: int
    n: int
    p: float
    alpha: float
    delta_u: float
    delta_tau: float
    tau_star: float
    tau0: float

    @property
    def u(self):
        return np.arange(self.m + 1) * self.delta_u

    @property
    def tau(self):
        t = np.arange(self.n + 1) * self.delta_tau
        t[0] = self.tau0
        return t


def build_mesh(m, n, p, alpha, tau0_factor=DEFAULT_TAU0_FACTOR):
    if int(m) != m or m < 2:
        raise ValueError(f"need an integer m >= 2, got {m}")
    if int(n) != n or n < 1:
        raise ValueError(f"need an integer n >= 1, got {n}")
    if not p > 0:
        raise ValueError(f"p must be positive, got {p}")
    if not 0.0 < alpha <= 1.0:
        raise ValueError(f"alpha must lie in (0, 1], got {alpha}")
    if not tau0_factor > 0:
        raise ValueError("tau0_factor must be positive")
    m, n = int(m), int(n)
    tau_star = p ** (-2.0 / alpha)
    delta_tau = tau_star / n
    return MeshSpec(
        m=m,
        n=n,
        p=float(p),
        alpha=float(alpha),
        delta_u=1.0 / m,
        delta_tau=delta_tau,
        tau_star=tau_star,
        tau0=tau0_factor * delta_tau,
    )


# -- quadrature weights ------------------------------------------------------


def _r_shape(k, alpha):
    """Trapezoidal product-integration coefficients for nodes ``j = 0..k+1``.

    Multiply by ``dtau**alpha / (alpha * (alpha + 1) * Gamma(alpha))`` to get
    the weights of the Riemann-Liouville integral up to ``tau_{k+1}``.
    """
    a1 = alpha + 1.0
    out = np.empty(k + 2)
    out[0] = k**a1 - (k - alpha) * (k + 1.0) ** alpha
    d = k - np.arange(1, k + 1, dtype=float)  # k - j for 1 <= j <= k
    out[1:-1] = (d + 2.0) ** a1 + d**a1 - 2.0 * (d + 1.0) ** a1
    out[-1] = 1.0
    return out


def _w_shape(k, alpha):
    """Rectangle-rule coefficients ``(k+1-j)**alpha - (k-j)**alpha`` for ``j = 0..k``."""
    d = k - np.arange(k + 1, dtype=float)
    return (d + 1.0) ** alpha - d**alpha


def r_weights(k, mesh):
    """All trapezoidal weights ``r_{j,k+1}``, ``j = 0..k+1``."""
    a = mesh.alpha
    scale = mesh.delta_tau**a / (a * (a + 1.0) * mesh.p**2 * gamma_fn(a) * mesh.delta_u**2)
    return scale * _r_shape(k, a)


def w_weights(k, mesh):
    """All rectangle weights ``w_{j,k+1}``, ``j = 0..k``.

    Unlike the trapezoidal weights these carry no ``1 / delta_u**2`` factor.
    """
    a = mesh.alpha
    return mesh.delta_tau**a / (mesh.p**2 * gamma_fn(a + 1.0)) * _w_shape(k, a)


def _check_alpha_p(mesh, alpha, p):
    if alpha is not None and alpha != mesh.alpha:
        raise ValueError("alpha differs from the mesh's alpha")
    if p is not None and p != mesh.p:
        raise ValueError("p differs from the mesh's p")


def weight_q(i, j, mesh, alpha=None):
    """Rectangle weight of the advective term, ``alpha * i * tau_j**(alpha-1) * dtau / 4``."""
    _check_alpha_p(mesh, alpha, None)
    if not (0 <= i <= mesh.m and 1 <= j <= mesh.n):
        raise IndexError(f"(i, j) = ({i}, {j}) outside 0..{mesh.m} x 1..{mesh.n}")
    a = mesh.alpha
    return a * i * (j * mesh.delta_tau) ** (a - 1.0) * mesh.delta_tau / 4.0


def weight_r(j, k, mesh, alpha=None, p=None):
    """Trapezoidal weight ``r_{j,k+1}``."""
    _check_alpha_p(mesh, alpha, p)
    if not (0 <= k and 0 <= j <= k + 1):
        raise IndexError(f"need 0 <= j <= k+1, got j={j}, k={k}")
    return float(r_weights(k, mesh)[j])


def weight_w(j, k, mesh, alpha=None, p=None):
    """Rectangle weight ``w_{j,k+1}``."""
    _check_alpha_p(mesh, alpha, p)
    if not (0 <= j <= k):
        raise IndexError(f"need 0 <= j <= k, got j={j}, k={k}")
    return float(w_weights(k, mesh)[j])


# -- grids -------------------------------------------------------------------


@dataclass
class SolutionGrid:
    """Auxiliary values ``cbar[i, j]`` with ``filled`` columns populated so far."""

    cbar: np.ndarray
    mesh: MeshSpec
    p: float
    alpha: float
    phi: float
    filled: int = 0


@dataclass(frozen=True)
class PhysicalGrid:
    u: np.ndarray
    tau: np.ndarray
    x: np.ndarray
    c: np.ndarray


class Tridiagonal(NamedTuple):
    """Tridiagonal matrix stored by diagonals; ``lower[i]`` sits at row ``i+1``."""

    lower: np.ndarray
    diag: np.ndarray
    upper: np.ndarray

    def to_dense(self):
        return np.diag(self.diag) + np.diag(self.lower, -1) + np.diag(self.upper, 1)

    def matvec(self, x):
        y = self.diag * x
        y[1:] += self.lower * x[:-1]
        y[:-1] += self.upper * x[1:]
        return y


def _differences(cbar, cols):
    """Second and central first differences over the interior rows."""
    c = cbar[:, cols]
    d2 = c[2:] - 2.0 * c[1:-1] + c[:-2]
    d1 = c[2:] - c[:-2]
    return d2, d1


def _assemble(mesh, phi, k, cbar, d2, d1, tau):
    """Layer ``k -> k+1`` system from precomputed difference columns ``0..k``."""
    a = mesh.alpha
    m = mesh.m
    i = np.arange(1, m, dtype=float)

    r = r_weights(k, mesh)
    w = w_weights(k, mesh)
    hist = phi * r[:-1] + (1.0 - phi) * w

    rhs = cbar[1:m, 0] * mesh.tau0**a + d2[:, : k + 1] @ hist
    if k >= 1:
        qscale = a * mesh.delta_tau / 4.0 * tau[1 : k + 1] ** (a - 1.0)
        rhs += i * (d1[:, 1 : k + 1] @ qscale)

    r_new = phi * r[-1]
    q_new = a * i * tau[k + 1] ** (a - 1.0) * mesh.delta_tau / 4.0
    sub = -r_new + q_new
    sup = -r_new - q_new
    diag = np.full(m - 1, tau[k + 1] ** a + 2.0 * r_new)

    rhs[0] -= sub[0] * cbar[0, k + 1]
    rhs[-1] -= sup[-1] * cbar[m, k + 1]
    return Tridiagonal(sub[1:], diag, sup[:-1]), rhs


def assemble_system(grid, k):
    """Linear system whose solution is the interior of column ``k+1``.

    Columns ``0..k`` of ``grid`` must already be populated.  Boundary values
    of column ``k+1`` are taken from the grid (they are imposed, not solved).
    """
    mesh = grid.mesh
    if not 0 <= k < mesh.n:
        raise IndexError(f"k={k} outside 0..{mesh.n - 1}")
    if grid.filled < k + 1:
        raise ValueError(f"history incomplete: {grid.filled} columns filled, need {k + 1}")
    d2, d1 = _differences(grid.cbar, slice(0, k + 1))
    return _assemble(mesh, grid.phi, k, grid.cbar, d2, d1, mesh.tau)


def solve_tridiagonal(A, b):
    """Thomas elimination without pivoting.

    Parameters
    ----------
    A : Tridiagonal
    b : ndarray

    Returns
    -------
    ndarray
    """
    lower = np.asarray(A.lower, dtype=float)
    diag = np.asarray(A.diag, dtype=float)
    upper = np.asarray(A.upper, dtype=float)
    b = np.asarray(b, dtype=float)
    n = diag.size
    if b.size != n or lower.size != n - 1 or upper.size != n - 1:
        raise ValueError("inconsistent tridiagonal system sizes")

    cp = np.empty(max(n - 1, 0))
    dp = np.empty(n)
    piv = diag[0]
    if piv == 0.0:
        raise ZeroPivotError("zero pivot in row 0")
    if n > 1:
        cp[0] = upper[0] / piv
    dp[0] = b[0] / piv
    for i in range(1, n):
        piv = diag[i] - lower[i - 1] * cp[i - 1]
        if piv == 0.0:
            raise ZeroPivotError(f"zero pivot in row {i}")
        if i < n - 1:
            cp[i] = upper[i] / piv
        dp[i] = (b[i] - lower[i - 1] * dp[i - 1]) / piv

    x = np.empty(n)
    x[-1] = dp[-1]
    for i in range(n - 2, -1, -1):
        x[i] = dp[i] - cp[i] * x[i + 1]
    return x


def _initial_grid(mesh, phi, zero_corner):
    a = mesh.alpha
    tau = mesh.tau
    cbar = np.empty((mesh.m + 1, mesh.n + 1))
    cbar[:, 0] = mesh.tau0 ** (-a)
    if zero_corner:
        cbar[0, 0] = 0.0
    cbar[0, 1:] = 0.0
    cbar[mesh.m, 1:] = tau[1:] ** (-a)
    cbar[1 : mesh.m, 1:] = np.nan
    return SolutionGrid(cbar=cbar, mesh=mesh, p=mesh.p, alpha=a, phi=float(phi), filled=1)


def march(params, mesh, phi, *, zero_corner=False):
    """Run the scheme over all ``n`` time layers.

    The initial column is the regularised state ``cbar = tau0**(-alpha)``,
    i.e. ``c = 1``, on every node including ``u = 0``.  With
    ``zero_corner=True`` the corner node is set to the boundary value 0
    instead; that variant puts a large spurious curvature into the first
    history term.

    Parameters
    ----------
    params : ModelParams
    mesh : MeshSpec
        Built for the front coefficient used in the transformation.
    phi : float
        Trapezoidal share of the blended quadrature, in ``[0, 1]``.

    Returns
    -------
    SolutionGrid
        With a read-only ``cbar`` array.
    """
    if not 0.0 <= phi <= 1.0:
        raise ValueError(f"phi must lie in [0, 1], got {phi}")
    if params.alpha != mesh.alpha:
        raise ValueError("params.alpha and mesh.alpha differ")

    grid = _initial_grid(mesh, phi, zero_corner)
    cbar = grid.cbar
    tau = mesh.tau
    m, n = mesh.m, mesh.n
    d2 = np.empty((m - 1, n + 1))
    d1 = np.empty((m - 1, n + 1))
    d2[:, :1], d1[:, :1] = _differences(cbar, slice(0, 1))

    for k in range(n):
        A, rhs = _assemble(mesh, grid.phi, k, cbar, d2, d1, tau)
        cbar[1:m, k + 1] = solve_tridiagonal(A, rhs)
        d2[:, k + 1 : k + 2], d1[:, k + 1 : k + 2] = _differences(cbar, slice(k + 1, k + 2))
        grid.filled = k + 2

    cbar.flags.writeable = False
    return grid


def recover(grid):
    """Physical coordinates ``x = u * p * tau**(alpha/2)`` and concentration ``c = cbar * tau**alpha``."""
    mesh = grid.mesh
    u = mesh.u
    tau = mesh.tau
    a = grid.alpha
    x = np.outer(u, grid.p * tau ** (0.5 * a))
    c = grid.cbar * tau[None, :] ** a
    return PhysicalGrid(u=u, tau=tau, x=x, c=c)
