"""Concrete DDE models, their equilibria, and Taylor coefficients.

All models are instances of the scalar delayed system

    x'(t) = eta * f(x(t), x(t - tau))

and every downstream analysis consumes only the Taylor coefficients of f
about the equilibrium, collected in :class:`TaylorCoefficients`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from .errors import InvalidSpec, InvariantViolation, NoEquilibrium

__all__ = [
    "CubicBD",
    "QuadraticBD",
    "Nicholson",
    "Generic",
    "ModelSpec",
    "TaylorCoefficients",
    "EquilibriumReport",
    "equilibrium",
    "quadratic_roots",
    "taylor_coefficients",
    "rhs",
    "delay_of",
]


@dataclass(frozen=True)
class TaylorCoefficients:
    """Partial-derivative coefficients of f at the equilibrium, plus the delay.

    The coefficients follow the factorial-normalized convention: the shifted
    deviation u = x - x_e evolves as

        u' = eta * (xi_x u + xi_y u_d + xi_xx u^2 + xi_xy u u_d + xi_yy u_d^2
                    + xi_xxx u^3 + xi_xxy u^2 u_d + xi_xyy u u_d^2 + xi_yyy u_d^3)

    with u_d = u(t - tau).  Accessors ``a = -xi_x``, ``b = -xi_y`` and
    ``epsilon = a/b`` name the linear part the way every stability formula
    consumes it.

    Construction enforces b > 0, a >= 0 and b > a, the cone on which the
    whole analysis is defined.  ``tau = 0`` is tolerated so the undelayed
    characteristic root can be queried; operations that genuinely need a
    positive delay check for it themselves.
    """

    xi_x: float
    xi_y: float
    xi_xx: float = 0.0
    xi_xy: float = 0.0
    xi_yy: float = 0.0
    xi_xxx: float = 0.0
    xi_xxy: float = 0.0
    xi_xyy: float = 0.0
    xi_yyy: float = 0.0
    tau: float = 1.0

    def __post_init__(self):
        if not all(map(math.isfinite, self.as_tuple())):
            raise InvariantViolation("non-finite Taylor coefficient")
        if self.b <= 0.0:
            raise InvariantViolation(f"b = -xi_y must be positive, got b = {self.b}")
        if self.a < 0.0:
            raise InvariantViolation(f"a = -xi_x must be nonnegative, got a = {self.a}")
        if self.b <= self.a:
            raise InvariantViolation(f"need b > a, got a = {self.a}, b = {self.b}")
        if self.tau < 0.0:
            raise InvariantViolation(f"delay must be nonnegative, got tau = {self.tau}")

    @property
    def a(self) -> float:
        return -self.xi_x

    @property
    def b(self) -> float:
        return -self.xi_y

    @property
    def epsilon(self) -> float:
        return self.a / self.b

    def as_tuple(self):
        return (self.xi_x, self.xi_y, self.xi_xx, self.xi_xy, self.xi_yy,
                self.xi_xxx, self.xi_xxy, self.xi_xyy, self.xi_yyy, self.tau)


@dataclass(frozen=True)
class CubicBD:
    """Delayed cubic oscillator x' = -(x^3 - mu*x + lam) - k*x(t-tau)."""

    k: float
    mu: float
    lam: float
    tau: float

    variant = "cubic"

    def __post_init__(self):
        if self.k <= 0.0:
            raise InvalidSpec(f"k > 0 required, got k = {self.k}")
        if self.k <= self.mu:
            raise InvalidSpec(f"k > mu required, got k = {self.k}, mu = {self.mu}")
        if self.tau <= 0.0:
            raise InvalidSpec(f"tau > 0 required, got tau = {self.tau}")


@dataclass(frozen=True)
class QuadraticBD:
    """Delayed quadratic oscillator x' = -(x^2 - mu*x + lam) - k*x(t-tau)."""

    k: float
    mu: float
    lam: float
    tau: float

    variant = "quadratic"

    def __post_init__(self):
        if self.k <= 0.0:
            raise InvalidSpec(f"k > 0 required, got k = {self.k}")
        if self.k <= self.mu:
            raise InvalidSpec(f"k > mu required, got k = {self.k}, mu = {self.mu}")
        if self.tau <= 0.0:
            raise InvalidSpec(f"tau > 0 required, got tau = {self.tau}")


@dataclass(frozen=True)
class Nicholson:
    """Nicholson blowflies equation N' = -gamma*N + p*N_d*exp(-N_d/x0)."""

    gamma: float
    p_rate: float
    x0_size: float
    tau: float

    variant = "nicholson"

    def __post_init__(self):
        if self.gamma <= 0.0 or self.p_rate <= 0.0 or self.x0_size <= 0.0:
            raise InvalidSpec("gamma, p_rate, x0_size must all be positive")
        if self.p_rate <= math.e * self.gamma:
            raise InvalidSpec(
                f"p_rate > e*gamma required (got p_rate = {self.p_rate}, "
                f"e*gamma = {math.e * self.gamma:.6g})")
        if self.tau <= 0.0:
            raise InvalidSpec(f"tau > 0 required, got tau = {self.tau}")


@dataclass(frozen=True)
class Generic:
    """A model given directly by its Taylor coefficients (deviation form).

    The right-hand side is the cubic Taylor polynomial itself, with
    equilibrium at u = 0.  Useful for linear decay benchmarks and for
    feeding arbitrary coefficient sets to the simulator.
    """

    coeffs: TaylorCoefficients

    variant = "generic"


ModelSpec = Union[CubicBD, QuadraticBD, Nicholson, Generic]


@dataclass(frozen=True)
class EquilibriumReport:
    x_e: float
    residual: float


def _cubic_equil(spec: CubicBD) -> float:
    # Unique real root of x^3 + (k - mu) x + lam = 0; the polynomial is
    # strictly increasing because k > mu, so plain bisection is safe.
    c1 = spec.k - spec.mu

    def poly(x: float) -> float:
        return x * x * x + c1 * x + spec.lam

    lo = -1.0 - abs(spec.lam) - spec.k
    hi = 1.0 + abs(spec.lam) + spec.k
    flo = poly(lo)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if hi - lo < 1e-12:
            break
        fm = poly(mid)
        if flo * fm <= 0.0:
            hi = mid
        else:
            lo, flo = mid, fm
    x = 0.5 * (lo + hi)
    for _ in range(3):
        d = 3.0 * x * x + c1
        if d != 0.0:
            x -= poly(x) / d
    return x


def quadratic_roots(spec: QuadraticBD) -> tuple[float, float]:
    """Both real roots of x^2 + (k - mu)x + lam = 0, larger first.

    Raises
    ------
    NoEquilibrium
        If the discriminant is negative.
    """
    c1 = spec.k - spec.mu
    disc = c1 * c1 - 4.0 * spec.lam
    if disc < 0.0:
        raise NoEquilibrium(
            f"quadratic discriminant negative ({disc:.6g}): no real equilibrium")
    s = math.sqrt(disc)
    return (-c1 + s) / 2.0, (-c1 - s) / 2.0


def equilibrium(spec: ModelSpec) -> EquilibriumReport:
    """Locate the equilibrium the analysis linearizes about.

    CubicBD has a unique real equilibrium.  QuadraticBD has up to two; the
    larger root is preferred, falling back to the smaller one if only that
    one yields an analyzable linearization (a >= 0 and b > a).  Nicholson's
    positive equilibrium is N* = x0 * ln(p/gamma).

    Returns
    -------
    EquilibriumReport
        Equilibrium location and the residual of the defining equation.
    """
    if isinstance(spec, CubicBD):
        x = _cubic_equil(spec)
        res = abs(x ** 3 + (spec.k - spec.mu) * x + spec.lam)
        return EquilibriumReport(x_e=x, residual=res)
    if isinstance(spec, QuadraticBD):
        x = _select_quadratic_root(spec)
        res = abs(x * x + (spec.k - spec.mu) * x + spec.lam)
        return EquilibriumReport(x_e=x, residual=res)
    if isinstance(spec, Nicholson):
        x = spec.x0_size * math.log(spec.p_rate / spec.gamma)
        res = abs(-spec.gamma * x + spec.p_rate * x * math.exp(-x / spec.x0_size))
        return EquilibriumReport(x_e=x, residual=res)
    if isinstance(spec, Generic):
        return EquilibriumReport(x_e=0.0, residual=0.0)
    raise InvalidSpec(f"unknown model spec {spec!r}")


def _select_quadratic_root(spec: QuadraticBD) -> float:
    for x in quadratic_roots(spec):
        a = 2.0 * x - spec.mu
        if a >= 0.0 and spec.k > a:
            return x
    raise InvariantViolation(
        "neither quadratic equilibrium satisfies 0 <= a < b; "
        "the model is outside the analyzable cone")


def taylor_coefficients(spec: ModelSpec) -> TaylorCoefficients:
    """Expand the model about its equilibrium.

    Parameters
    ----------
    spec : ModelSpec

    Returns
    -------
    TaylorCoefficients
        Factorial-normalized coefficients; construction re-validates the
        0 <= a < b cone and raises InvariantViolation outside it.
    """
    if isinstance(spec, Generic):
        return spec.coeffs
    x_e = equilibrium(spec).x_e
    if isinstance(spec, CubicBD):
        return TaylorCoefficients(
            xi_x=-(3.0 * x_e * x_e - spec.mu),
            xi_y=-spec.k,
            xi_xx=-3.0 * x_e,
            xi_xxx=-1.0,
            tau=spec.tau,
        )
    if isinstance(spec, QuadraticBD):
        return TaylorCoefficients(
            xi_x=-(2.0 * x_e - spec.mu),
            xi_y=-spec.k,
            xi_xx=-1.0,
            tau=spec.tau,
        )
    if isinstance(spec, Nicholson):
        q = math.log(spec.p_rate / spec.gamma)
        return TaylorCoefficients(
            xi_x=-spec.gamma,
            xi_y=-spec.gamma * (q - 1.0),
            xi_yy=-(spec.gamma / spec.x0_size) * (2.0 - q),
            xi_yyy=(spec.gamma / spec.x0_size ** 2) * (3.0 - q),
            tau=spec.tau,
        )
    raise InvalidSpec(f"unknown model spec {spec!r}")


def delay_of(spec: ModelSpec) -> float:
    """The delay tau of the model, wherever the variant stores it."""
    if isinstance(spec, Generic):
        return spec.coeffs.tau
    return spec.tau


def rhs(spec: ModelSpec, x: float, x_delayed: float, eta: float = 1.0) -> float:
    """Evaluate eta * f(x, x_delayed) for the model's defining equation."""
    if isinstance(spec, CubicBD):
        return eta * (-(x ** 3 - spec.mu * x + spec.lam) - spec.k * x_delayed)
    if isinstance(spec, QuadraticBD):
        return eta * (-(x * x - spec.mu * x + spec.lam) - spec.k * x_delayed)
    if isinstance(spec, Nicholson):
        return eta * (-spec.gamma * x
                      + spec.p_rate * x_delayed * math.exp(-x_delayed / spec.x0_size))
    if isinstance(spec, Generic):
        c = spec.coeffs
        u, v = x, x_delayed
        return eta * (c.xi_x * u + c.xi_y * v
                      + c.xi_xx * u * u + c.xi_xy * u * v + c.xi_yy * v * v
                      + c.xi_xxx * u ** 3 + c.xi_xxy * u * u * v
                      + c.xi_xyy * u * v * v + c.xi_yyy * v ** 3)
    raise InvalidSpec(f"unknown model spec {spec!r}")
