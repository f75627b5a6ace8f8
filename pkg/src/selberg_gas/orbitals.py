"""Effective single-particle states of the asymptotic density matrix.

The weakly singular kernel |X-Y|^(-1/2) [Y(1-Y)]^(-1/4) has the
quarter-index Gegenbauer polynomials as exact eigenfunctions.  This module
applies the kernel numerically, builds the normalized orbitals and their
occupations, and verifies the hypergeometric identities behind the
operator/differential-operator commutation argument.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .quadrature import SingularIntegrand, singular_integrate
from .specfun import (
    DomainError,
    gegenbauer_quarter,
    gegenbauer_quarter_table,
    hyp2f1,
    log_gamma,
)


def _gegenbauer_vec(j: int, x):
    return gegenbauer_quarter_table(j, np.asarray(x, dtype=float))[j]


@dataclass(frozen=True)
class KernelSpec:
    """Kernel |X-Y|^(-nu) [Y(1-Y)]^weight_exponent on (0,1)."""

    nu: float
    weight_exponent: float

    def __post_init__(self):
        if not 0.0 < self.nu < 1.0:
            raise DomainError(f"singularity exponent must lie in (0,1), got {self.nu}")
        if self.weight_exponent <= -1.0:
            raise DomainError(
                f"weight exponent must exceed -1, got {self.weight_exponent}")


@dataclass(frozen=True)
class Orbital:
    """Normalized effective single-particle state on a box of length L."""

    j: int
    L: float
    normalization: float
    evaluate: Callable


@dataclass(frozen=True)
class AppendixState:
    """One evaluation point of the hypergeometric sum S_j and its prefactor."""

    j: int
    k: int
    z: float
    omega_j: float
    s_value: float


def apply_kernel(spec: KernelSpec, f: Callable, X: float, tol: float = 1e-8) -> float:
    """Integral of f(Y) |X-Y|^(-nu) [Y(1-Y)]^w over (0,1) at interior X.

    f must stay bounded on (0,1); singular endpoint behavior belongs in
    the weight exponent.
    """
    if not 0.0 < X < 1.0:
        raise DomainError(f"kernel argument must lie in (0,1), got {X}")
    integrand = SingularIntegrand(
        smooth_factor=f,
        interior_singularity=(X, -spec.nu),
        endpoint_exponents=(spec.weight_exponent, spec.weight_exponent))
    return singular_integrate(integrand, tol)


EIGEN_KERNEL = KernelSpec(nu=0.5, weight_exponent=-0.25)


def scaled_occupation(j: int) -> float:
    """Eigenvalue of the weighted kernel on the j-th Gegenbauer mode:
    sqrt(2 pi) Gamma(j + 1/2) / j!."""
    if j < 0:
        raise DomainError(f"orbital index must be >= 0, got {j}")
    return math.exp(0.5 * math.log(2.0 * math.pi) + log_gamma(j + 0.5) - log_gamma(j + 1.0))


def orbital(j: int, L: float = 1.0) -> Orbital:
    """The normalized j-th orbital: const * (X(1-X))^{1/8} C_j^{1/4}(2X-1).

    Normalized so that (L/pi) int phi_j^2 dX / sqrt(X(1-X)) = 1, positive
    as X -> 1.
    """
    if j < 0:
        raise DomainError(f"orbital index must be >= 0, got {j}")
    if L <= 0.0:
        raise DomainError(f"box length must be positive, got {L}")
    log_norm = 0.5 * (log_gamma(j + 1.0) + math.log(j + 0.25)
                      + 2.0 * log_gamma(0.25) - log_gamma(j + 0.5)) - 0.5 * math.log(L)
    norm = math.exp(log_norm)

    def evaluate(X):
        X = np.asarray(X, dtype=float)
        vals = norm * (X * (1.0 - X)) ** 0.125
        if j == 0:
            return vals
        return vals * _gegenbauer_vec(j, 2.0 * X - 1.0)

    return Orbital(j=j, L=L, normalization=norm, evaluate=evaluate)


def eigen_residual(j: int, X: float, tol: float = 1e-8) -> float:
    """Scaled defect of the eigenrelation for the j-th Gegenbauer mode at X."""
    lhs = apply_kernel(EIGEN_KERNEL, lambda Y: _gegenbauer_vec(j, 2.0 * Y - 1.0), X, tol)
    rhs = scaled_occupation(j) * gegenbauer_quarter(j, 2.0 * X - 1.0)
    return abs(lhs - rhs) / (1.0 + abs(rhs))


def verify_expansion_identity(j_max: int, X: float, tol: float = 1e-8) -> float:
    """Max residual, over modes k <= j_max, of the kernel expansion identity
    projected against C_k^{1/4} under the weight [Y(1-Y)]^{-1/4}.

    The projection integrates Y out, reducing each mode to its
    eigenrelation; the pointwise identity's X = Y singularity never
    enters.
    """
    if j_max < 0:
        raise DomainError(f"j_max must be >= 0, got {j_max}")
    return max(eigen_residual(k, X, tol) for k in range(j_max + 1))


def porter_stirling_solution(nu: float) -> tuple:
    """Closed-form solution of  int phi(t) |x-t|^(-nu) dt = 1  on (0,1).

    Returns (constant, endpoint exponent): phi(t) = const * [t(1-t)]^expo
    with const = cos(pi nu / 2) / pi and expo = (nu - 1)/2.
    """
    if not 0.0 < nu < 1.0:
        raise DomainError(f"nu must lie in (0,1), got {nu}")
    return math.cos(0.5 * math.pi * nu) / math.pi, 0.5 * (nu - 1.0)


def porter_stirling_apply(nu: float, X: float, tol: float = 1e-8) -> float:
    """Apply the |x-t|^(-nu) kernel to the closed-form solution; exact value 1."""
    const, expo = porter_stirling_solution(nu)
    spec = KernelSpec(nu=nu, weight_exponent=expo)
    return apply_kernel(spec, lambda Y: const * np.ones_like(Y), X, tol)


def _series_coefficients(j: int) -> np.ndarray:
    # (-j)_k (j+1/2)_k / (k! (3/4)_k) for k = 0..j
    out = np.empty(j + 1)
    out[0] = 1.0
    for k in range(j):
        out[k + 1] = out[k] * (-j + k) * (j + 0.5 + k) / ((k + 1.0) * (0.75 + k))
    return out


def omega(j: int) -> float:
    """Prefactor Gamma(3/4)/Gamma(5/4) * Gamma(j+1/2)/j! of the kernel sum."""
    return math.exp(log_gamma(0.75) - log_gamma(1.25)
                    + log_gamma(j + 0.5) - log_gamma(j + 1.0))


def appendix_s(j: int, z: float) -> float:
    """The hypergeometric sum S_j(z) built from terminating-side 2F1 terms."""
    if j < 0:
        raise DomainError(f"index must be >= 0, got {j}")
    if not 0.0 < z < 1.0:
        raise DomainError(f"argument must lie in (0,1), got {z}")
    coeff = _series_coefficients(j)
    zq = z**0.25
    return float(sum(c * zq * hyp2f1(0.25 - k, 0.75, 1.25, z)
                     for k, c in enumerate(coeff)))


def appendix_state(j: int, k: int, z: float) -> AppendixState:
    if not 0 <= k <= j:
        raise DomainError(f"need 0 <= k <= j, got k={k}, j={j}")
    return AppendixState(j=j, k=k, z=z, omega_j=omega(j), s_value=appendix_s(j, z))


def l_operator_on_term(k: int, z: float) -> float:
    """Analytic value of L[z^{1/4} 2F1(1/4-k, 3/4; 5/4; z)] where
    L = z(1-z) d^2/dz^2 - (3/4)(2z-1) d/dz.

    Both derivatives come from the parameter-shift differentiation rule,
    which collapses back to 2F1 values at shifted lower parameters.
    """
    a = 0.25 - k
    pref = -(3.0 / 16.0) * z**0.25 / z
    return pref * ((1.0 - z) * hyp2f1(a, 0.75, -0.75, z)
                   + (2.0 * z - 1.0) * hyp2f1(a, 0.75, 0.25, z))


def l_operator_on_s(j: int, z: float) -> float:
    """Analytic L S_j(z); equals -j(j+1/2) S_j(z) on the eigenspace."""
    coeff = _series_coefficients(j)
    return float(sum(c * l_operator_on_term(k, z) for k, c in enumerate(coeff)))


def s_term_derivative(k: int, z: float) -> float:
    """Analytic d/dz of z^{1/4} 2F1(1/4-k, 3/4; 5/4; z) via the same rule."""
    return 0.25 * z**-0.75 * hyp2f1(0.25 - k, 0.75, 0.25, z)


def contiguity_residuals(k: int, z: float) -> tuple:
    """Defects of the two contiguity relations tying the shifted-parameter
    2F1 values together; both vanish identically."""
    a = 0.25 - k
    f_m34 = hyp2f1(a, 0.75, -0.75, z)
    f_14 = hyp2f1(a, 0.75, 0.25, z)
    f_54 = hyp2f1(a, 0.75, 1.25, z)
    f_54_up = hyp2f1(a + 1.0, 0.75, 1.25, z)
    lhs1 = -(3.0 / 16.0) * (1.0 - z) * f_m34
    rhs1 = (1.0 / 16.0) * ((6.0 - 4.0 * k) * z - 3.0) * f_14 - 0.5 * k * z * f_54
    lhs2 = -0.25 * f_14
    rhs2 = -k * f_54 - (0.25 - k) * f_54_up
    return lhs1 - rhs1, lhs2 - rhs2


def kernel_via_hypergeometric(j: int, X: float) -> float:
    """Kernel image of the j-th Gegenbauer mode from the closed
    hypergeometric representation: Omega_j [S_j(X) + (-1)^j S_j(1-X)]."""
    om = omega(j)
    return om * (appendix_s(j, X) + (-1) ** j * appendix_s(j, 1.0 - X))
