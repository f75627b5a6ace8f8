"""Closed-form evaluations and asymptotic formulas.

Selberg, Morris and Mehta integrals, the duality proportionality constant,
Barnes-ratio asymptotics, the large-n partition-ratio asymptote, the
density-matrix asymptote and the exact natural-orbital occupations.

Every product of gamma functions is carried in log space (LogMagnitude)
so that ensemble sizes up to 10^4 stay in range.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .specfun import DomainError, log_barnes_g, log_gamma


@dataclass(frozen=True)
class LogMagnitude:
    """A real number stored as sign * exp(log_abs); sign 0 means exactly 0."""

    log_abs: float
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise ValueError(f"sign must be -1, 0 or +1, got {self.sign}")

    @classmethod
    def from_value(cls, x: float) -> "LogMagnitude":
        if x == 0.0:
            return cls(0.0, 0)
        return cls(math.log(abs(x)), 1 if x > 0 else -1)

    def value(self) -> float:
        if self.sign == 0:
            return 0.0
        return self.sign * math.exp(self.log_abs)

    def __mul__(self, other: "LogMagnitude") -> "LogMagnitude":
        if self.sign == 0 or other.sign == 0:
            return LogMagnitude(0.0, 0)
        return LogMagnitude(self.log_abs + other.log_abs, self.sign * other.sign)

    def __truediv__(self, other: "LogMagnitude") -> "LogMagnitude":
        if other.sign == 0:
            raise ZeroDivisionError("division by an exactly-zero LogMagnitude")
        if self.sign == 0:
            return LogMagnitude(0.0, 0)
        return LogMagnitude(self.log_abs - other.log_abs, self.sign * other.sign)


@dataclass(frozen=True)
class EnsembleParams:
    """Jacobi-ensemble weight x^lambda1 (1-x)^lambda2 with squared Vandermonde.

    Only the unitary coupling lam = 1 is supported by the closed forms here;
    beta is the equivalent circular-ensemble coupling 2/lam.
    """

    n: int
    lambda1: float
    lambda2: float
    lam: float = 1.0
    beta: float = field(init=False)

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"particle count must be >= 1, got {self.n}")
        if self.lambda1 <= -1.0 or self.lambda2 <= -1.0:
            raise DomainError(
                f"weight exponents must exceed -1, got ({self.lambda1}, {self.lambda2})")
        if self.lam != 1.0:
            raise DomainError(f"only coupling lam = 1 is implemented, got {self.lam}")
        object.__setattr__(self, "beta", 2.0 / self.lam)


@dataclass(frozen=True)
class MorrisParams:
    """Size and exponents (a, b) of a circular-ensemble Morris integral."""

    n: int
    a: float
    b: float

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"Morris size must be >= 1, got {self.n}")
        if self.a + self.b <= -1.0:
            raise DomainError(f"Morris requires a + b > -1, got {self.a + self.b}")


BOUNDARY_DIRICHLET = "dirichlet"
BOUNDARY_NEUMANN = "neumann"


@dataclass(frozen=True)
class DensityMatrixQuery:
    """Point (X, Y) of the (N+1)-particle density matrix on a box of length L.

    N follows the convention that the system holds N+1 particles; the
    density is rho = N / L.
    """

    N: int
    X: float
    Y: float
    boundary: str = BOUNDARY_DIRICHLET
    L: float = 1.0

    def __post_init__(self):
        if self.N < 1:
            raise DomainError(f"N must be >= 1, got {self.N}")
        if not (0.0 < self.X < 1.0 and 0.0 < self.Y < 1.0):
            raise DomainError(f"X, Y must lie in (0,1), got ({self.X}, {self.Y})")
        if self.boundary not in (BOUNDARY_DIRICHLET, BOUNDARY_NEUMANN):
            raise DomainError(f"unknown boundary {self.boundary!r}")
        if self.L <= 0.0:
            raise DomainError(f"box length must be positive, got {self.L}")

    @property
    def rho(self) -> float:
        return self.N / self.L

    def weight_exponent(self) -> float:
        """Jacobi exponent of the ensemble weight tied to the boundary."""
        return 0.5 if self.boundary == BOUNDARY_DIRICHLET else -0.5


def selberg_closed(n: int, a: float, b: float) -> LogMagnitude:
    """log S_n(a, b, 1), the Selberg integral at unitary coupling."""
    if a <= -1.0 or b <= -1.0:
        raise DomainError(f"Selberg exponents must exceed -1, got ({a}, {b})")
    if n < 1 or n != int(n):
        raise DomainError(f"Selberg size must be a positive integer, got {n}")
    total = 0.0
    for j in range(int(n)):
        total += (log_gamma(a + 1.0 + j) + log_gamma(b + 1.0 + j)
                  + log_gamma(2.0 + j) - log_gamma(a + b + 1.0 + n + j))
    return LogMagnitude(total, 1)


def selberg_closed_barnes(nu: float, a: float, b: float) -> LogMagnitude:
    """log S_nu(a, b, 1) continued to non-integer size via Barnes G ratios."""
    if a <= -1.0 or b <= -1.0:
        raise DomainError(f"Selberg exponents must exceed -1, got ({a}, {b})")
    if nu <= 0.0:
        raise DomainError(f"Selberg size must be positive, got {nu}")
    total = (log_barnes_g(nu + 1.0 + a) - log_barnes_g(1.0 + a)
             + log_barnes_g(nu + 1.0 + b) - log_barnes_g(1.0 + b)
             + log_barnes_g(nu + 1.0 + a + b) - log_barnes_g(2.0 * nu + 1.0 + a + b)
             + log_barnes_g(nu + 2.0))
    return LogMagnitude(total, 1)


def morris_closed(p: MorrisParams) -> LogMagnitude:
    """log M_n(a, b, 1), the Morris integral at unitary coupling."""
    n, a, b = p.n, p.a, p.b
    total = 0.0
    for j in range(n):
        for arg in (a + 1.0 + j, b + 1.0 + j):
            if arg <= 0.0:
                raise DomainError(f"Morris gamma argument {arg} <= 0")
        total += (log_gamma(a + b + 1.0 + j) + log_gamma(2.0 + j)
                  - log_gamma(a + 1.0 + j) - log_gamma(b + 1.0 + j))
    return LogMagnitude(total, 1)


def mehta_volume(m_half: int) -> LogMagnitude:
    """log of the Gaussian (Mehta) volume constant for m/2 = m_half variables."""
    if m_half < 1:
        raise DomainError(f"m_half must be >= 1, got {m_half}")
    m = 2 * m_half
    return LogMagnitude(0.25 * m * math.log(2.0 * math.pi) + log_barnes_g(0.5 * m + 2.0), 1)


def eta_exponents(params: EnsembleParams) -> tuple:
    """Circular-side Morris exponents (eta1, eta2) dual to the Jacobi weight."""
    lam = params.lam
    eta1 = (params.lambda2 + 1.0) / lam - 1.0
    eta2 = (params.lambda1 + 1.0) / lam + params.n - 1.0
    return eta1, eta2


def duality_constant_A(params: EnsembleParams, m: int) -> LogMagnitude:
    """log of the t-independent constant linking the Jacobi and circular sides."""
    if m < 2 or m % 2 != 0:
        raise DomainError(f"m must be a positive even integer, got {m}")
    eta1, eta2 = eta_exponents(params)
    num = selberg_closed(params.n, params.lambda1, params.lambda2 + m)
    den = selberg_closed(params.n, params.lambda1, params.lambda2)
    mor0 = morris_closed(MorrisParams(m, 0.0, 0.0))
    mor = morris_closed(MorrisParams(m, eta2, eta1))
    return LogMagnitude(num.log_abs - den.log_abs + mor0.log_abs - mor.log_abs, 1)


def asymptotic_partition_ratio(n: int, q: float, t: float,
                               params: "EnsembleParams" = None) -> float:
    """Large-n asymptote of the charge-balanced single-insertion partition ratio.

    Independent of the Jacobi weight exponents by construction; params is
    accepted for interface symmetry and never read.
    """
    if not 0.0 < t < 1.0:
        raise DomainError(f"t must lie in (0,1), got {t}")
    if q <= 0.0:
        raise DomainError(f"charge q must be positive, got {q}")
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    # product form keeps the q = 1 case exact: the Barnes factors and the
    # (2n)-power both collapse to 1 without log-space round-off
    return (math.pi ** -q
            * math.exp(2.0 * log_barnes_g(q + 1.0) - log_barnes_g(2.0 * q + 1.0))
            * (2.0 * n) ** (q * q - q)
            * (t * (1.0 - t)) ** (-0.5 * q * q))


def log_g4_half3() -> float:
    """log of G(3/2)^4, the universal constant of the density-matrix asymptote."""
    return 4.0 * log_barnes_g(1.5)


def density_matrix_asymptote(query: DensityMatrixQuery) -> float:
    """Leading large-N form of the density matrix at fixed interior (X, Y).

    The Dirichlet and Neumann boundaries share this limit, so the query's
    boundary field does not enter.
    """
    X, Y = query.X, query.Y
    if X == Y:
        raise DomainError("asymptotic density matrix diverges at X = Y")
    return (query.rho * math.exp(log_g4_half3()) / math.sqrt(2.0 * query.N)
            * (X * (1.0 - X)) ** 0.125 * (Y * (1.0 - Y)) ** 0.125
            / math.sqrt(abs(X - Y)))


def occupation_number(j: int, N: int) -> float:
    """Occupation of the j-th effective single-particle state, ~ sqrt(N)."""
    if j < 0:
        raise DomainError(f"orbital index must be >= 0, got {j}")
    if N < 1:
        raise DomainError(f"N must be >= 1, got {N}")
    log_val = (log_g4_half3() + log_gamma(j + 0.5)
               - 0.5 * math.log(math.pi) - log_gamma(j + 1.0))
    return math.exp(log_val) * math.sqrt(N)


def barnes_ratio_asymptote(n: int, a: float, b: float) -> float:
    """Large-n asymptote of log( G(n+a+1) / G(n+b+1) ), up to o(1)."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    return ((b - a) * n + 0.5 * (a - b) * math.log(2.0 * math.pi)
            + ((a - b) * n + 0.5 * (a * a - b * b)) * math.log(n))
