"""Scalar special functions, Gauss-Hermite quadrature and the model constants.

Everything is taken with respect to the standard Gaussian probability measure
gamma_1 = (2 pi)^{-1/2} e^{-x^2/2} dx, and the Hermite polynomials are the
orthonormal probabilists' family.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, QuadratureError

__all__ = [
    "FractionalOrder",
    "QuadratureRule",
    "ConstantsTable",
    "hermite_eval",
    "gauss_hermite_rule",
    "gamma_fn",
    "phi",
    "phi_total",
    "phi_inv",
    "iso_function",
    "k_coefficient",
    "beta_coefficient",
    "constants",
    "as_order",
]

SQRT_2PI = math.sqrt(2.0 * math.pi)


@dataclass(frozen=True)
class FractionalOrder:
    """Fractional order s, constrained to the open interval (0, 1)."""

    s: float

    def __post_init__(self):
        if not (0.0 < self.s < 1.0):
            raise DomainError(f"fractional order must lie in (0, 1), got {self.s}")


def as_order(s) -> FractionalOrder:
    """Coerce a float (or FractionalOrder) into a validated FractionalOrder."""
    if isinstance(s, FractionalOrder):
        return s
    return FractionalOrder(float(s))


def hermite_eval(n: int, x: float) -> float:
    """Orthonormal probabilists' Hermite polynomial h_n(x).

    Three-term recurrence h_{k+1} = (x h_k - sqrt(k) h_{k-1}) / sqrt(k+1).
    """
    if n < 0:
        raise DomainError("Hermite index must be nonnegative")
    if n == 0:
        return 1.0
    h_prev, h = 1.0, float(x)
    for k in range(1, n):
        h_prev, h = h, (x * h - math.sqrt(k) * h_prev) / math.sqrt(k + 1)
    return h


def _hermite_with_derivative(n: int, x: float) -> tuple[float, float]:
    """(h_n(x), h_n'(x)); the derivative uses h_n' = sqrt(n) h_{n-1}."""
    if n == 0:
        return 1.0, 0.0
    h_prev, h = 1.0, float(x)
    for k in range(1, n):
        h_prev, h = h, (x * h - math.sqrt(k) * h_prev) / math.sqrt(k + 1)
    return h, math.sqrt(n) * h_prev


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss-Hermite nodes/weights for integration against gamma_1."""

    order: int
    nodes: np.ndarray
    weights: np.ndarray

    def integrate(self, f) -> float:
        return float(np.dot(self.weights, f(self.nodes)))


def gauss_hermite_rule(n: int) -> QuadratureRule:
    """Gauss rule of order n for gamma_1, exact on polynomials of degree 2n-1.

    Nodes are the zeros of h_n found by Newton iteration from the classical
    asymptotic initial guesses; weights are the Christoffel numbers
    1 / sum_{k<n} h_k(x_i)^2.
    """
    if not (1 <= n <= 500):
        raise DomainError(f"quadrature order must be in [1, 500], got {n}")
    if n == 1:
        return QuadratureRule(1, np.array([0.0]), np.array([1.0]))

    # Initial guesses in the physicists' scale (roots of H_n), then x = z*sqrt(2).
    sq2 = math.sqrt(2.0)
    nodes = np.empty(n)
    m = (n + 1) // 2
    z = 0.0
    for i in range(m):
        if i == 0:
            z = math.sqrt(2.0 * n + 1.0) - 1.85575 * (2.0 * n + 1.0) ** (-1.0 / 6.0)
        elif i == 1:
            z -= 1.14 * n ** 0.426 / z
        elif i == 2:
            z = 1.86 * z - 0.86 * nodes[0] / sq2
        elif i == 3:
            z = 1.91 * z - 0.91 * nodes[1] / sq2
        else:
            z = 2.0 * z - nodes[i - 2] / sq2
        x = z * sq2
        converged = False
        for _ in range(100):
            h, dh = _hermite_with_derivative(n, x)
            dx = h / dh
            x -= dx
            if abs(dx) <= 1e-15 * (1.0 + abs(x)):
                converged = True
                break
        if not converged:
            raise QuadratureError(f"Newton iteration failed for Gauss-Hermite rule n={n}")
        nodes[i] = x
        z = x / sq2

    # The guesses above walk down from the largest root; mirror to negatives.
    full = np.empty(n)
    for i in range(m):
        full[n - 1 - i] = nodes[i]
        full[i] = -nodes[i]
    if n % 2 == 1:
        full[m - 1] = 0.0
    nodes = full

    weights = np.empty(n)
    for i, x in enumerate(nodes):
        acc = 0.0
        h_prev, h = 1.0, float(x)
        acc += 1.0  # h_0^2
        for k in range(1, n):
            acc += h * h
            h_prev, h = h, (x * h - math.sqrt(k) * h_prev) / math.sqrt(k + 1)
        weights[i] = 1.0 / acc
    # Symmetrize exactly; the rule is invariant under x -> -x.
    weights = 0.5 * (weights + weights[::-1])
    return QuadratureRule(n, nodes, weights)


# Lanczos approximation, g = 7, 9 coefficients.
_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def gamma_fn(x: float) -> float:
    """Euler Gamma via the Lanczos series, reflection for arguments < 1/2."""
    if x <= 0.0 and x == math.floor(x):
        raise DomainError(f"gamma pole at {x}")
    if x < 0.5:
        # Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x).
        return math.pi / (math.sin(math.pi * x) * gamma_fn(1.0 - x))
    x -= 1.0
    a = _LANCZOS[0]
    for i in range(1, 9):
        a += _LANCZOS[i] / (x + i)
    t = x + _LANCZOS_G + 0.5
    return SQRT_2PI * t ** (x + 0.5) * math.exp(-t) * a


def phi(r: float) -> float:
    """Gaussian CDF Phi(r) = gamma_1((-inf, r))."""
    return 0.5 * math.erfc(-r / math.sqrt(2.0))


def phi_total(r: float) -> float:
    """Phi extended to the extended reals: +-inf map to 1/0."""
    if math.isinf(r):
        return 1.0 if r > 0 else 0.0
    return phi(r)


def gauss_density(r: float) -> float:
    return math.exp(-0.5 * r * r) / SQRT_2PI


def phi_inv(m: float) -> float:
    """Inverse Gaussian CDF by safeguarded Newton on phi."""
    if not (0.0 < m < 1.0):
        raise DomainError(f"phi_inv needs an argument in (0, 1), got {m}")
    lo, hi = -40.0, 40.0
    r = 0.0
    for _ in range(200):
        f = phi(r) - m
        if f > 0.0:
            hi = min(hi, r)
        else:
            lo = max(lo, r)
        d = gauss_density(r)
        step = f / d if d > 0.0 else math.inf
        r_new = r - step
        if not (lo < r_new < hi):
            r_new = 0.5 * (lo + hi)
        if abs(r_new - r) <= 1e-15 * (1.0 + abs(r_new)):
            return r_new
        r = r_new
    return r


def iso_function(m: float) -> float:
    """Gaussian isoperimetric function I(m) = exp(-Phi^{-1}(m)^2 / 2)."""
    if not (0.0 < m < 1.0):
        raise DomainError(f"iso_function needs an argument in (0, 1), got {m}")
    r = phi_inv(m)
    return math.exp(-0.5 * r * r)


def k_coefficient(a: float) -> float:
    """Boundary-flux constant K_a = a |Gamma(-a/2)| / (2^a Gamma(a/2)), a in (0, 2).

    For the perimeter of order s the relevant value is K_s (a = s); for the
    flux of the order-sigma extension it is K_{2 sigma} (a = 2 sigma).
    """
    if not (0.0 < a < 2.0):
        raise DomainError(f"k_coefficient needs a in (0, 2), got {a}")
    return a * abs(gamma_fn(-a / 2.0)) / (2.0 ** a * gamma_fn(a / 2.0))


def beta_coefficient(a: float) -> float:
    """Semigroup-trace constant beta_a = Gamma(1-a/2) / (2^a K_a Gamma(1+a/2))."""
    if not (0.0 < a < 2.0):
        raise DomainError(f"beta_coefficient needs a in (0, 2), got {a}")
    return gamma_fn(1.0 - a / 2.0) / (2.0 ** a * k_coefficient(a) * gamma_fn(1.0 + a / 2.0))


@dataclass(frozen=True)
class ConstantsTable:
    """K_s and beta_s for one fractional order."""

    s: FractionalOrder
    K_s: float
    beta_s: float


def constants(s) -> ConstantsTable:
    order = as_order(s)
    return ConstantsTable(order, k_coefficient(order.s), beta_coefficient(order.s))
