"""First Lyapunov coefficient and Hopf classification.

Two independent routes to the coefficient mu2 are provided: a closed-form
rational-trigonometric expression in (b, epsilon) and the quadratic/cubic
Taylor coefficients, and a step-by-step center-manifold reduction carried
out in complex double precision.  At a coefficient set whose delay puts the
critical gain at exactly 1 the two routes agree to machine precision; the
test suite pins this down to 1e-8 relative over random coefficient sets.
The closed-form coefficient table is cross-validated monomial by monomial
against the center-manifold route.

Specializations for models with a single nonlinear argument (quadratic and
cubic self-coupling, and the exponential birth-rate model) are expressed
through the shape functions g_tilde and h_tilde of epsilon alone.
"""
from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

from .chareq import HopfPoint
from .errors import DegenerateEpsilon, ZeroDenominator
from .models import Nicholson, TaylorCoefficients

__all__ = [
    "DEGENERACY_THRESHOLD",
    "Direction",
    "CycleStability",
    "LyapunovReport",
    "mu2_closed_form",
    "mu2_center_manifold",
    "g_tilde",
    "h_tilde",
    "mu2_cubic_specialization",
    "mu2_quadratic_specialization",
    "nicholson_mu2",
    "nicholson_mu2_shape",
    "classify",
]

DEGENERACY_THRESHOLD = 1e-8


class Direction(enum.Enum):
    SUPERCRITICAL = "Supercritical"
    SUBCRITICAL = "Subcritical"
    DEGENERATE = "Degenerate"


class CycleStability(enum.Enum):
    STABLE = "Stable"
    UNSTABLE = "Unstable"
    DEGENERATE = "Degenerate"


@dataclass(frozen=True)
class LyapunovReport:
    """Output of the center-manifold reduction at a Hopf point.

    mu2 decides the bifurcation direction (positive: supercritical) and
    beta2 the Floquet stability of the emerging cycle (negative: stable).
    Both derive from Re c1_0, so mu2 = -Re(c1_0)/alpha_prime and
    beta2 = 2 Re(c1_0) hold by construction, as does
    beta2 = -2 mu2 alpha_prime.  The complex intermediates g20, g11, g02,
    g21, the normalization D and the manifold correction constants E, F are
    retained for inspection.
    """

    mu2: float
    beta2: float
    c1_0: complex
    alpha_prime: float
    g20: complex
    g11: complex
    g02: complex
    g21: complex
    D: complex
    E: complex
    F: complex
    direction: Direction
    cycle_stability: CycleStability


def _eps_parts(epsilon: float) -> tuple[float, float]:
    """(sqrt(1-eps^2), arccos(-eps)) with the domain guard 0 <= eps < 1."""
    if not 0.0 <= epsilon < 1.0:
        raise DegenerateEpsilon(
            f"epsilon = a/b must lie in [0, 1), got {epsilon!r}")
    return math.sqrt(1.0 - epsilon * epsilon), math.acos(-epsilon)


def mu2_closed_form(coeffs: TaylorCoefficients) -> float:
    """First Lyapunov coefficient from the closed-form expression.

    The value is a rational-trigonometric function of epsilon = a/b scaled
    by powers of b, with one brace collecting the six quadratic-coefficient
    products and one the four cubic coefficients.  It corresponds to the
    center-manifold result normalized to critical gain 1; see
    mu2_center_manifold for the route that carries the gain explicitly.

    Parameters
    ----------
    coeffs : TaylorCoefficients
        Expansion of the right-hand side about the equilibrium.

    Returns
    -------
    float
        mu2.  Positive means the Hopf bifurcation is supercritical.

    Raises
    ------
    DegenerateEpsilon
        If epsilon lies outside [0, 1).
    """
    b = coeffs.b
    e = coeffs.epsilon
    ck, ht = _eps_parts(e)
    xx, xy, yy = coeffs.xi_xx, coeffs.xi_xy, coeffs.xi_yy
    xxx, xxy, xyy, yyy = coeffs.xi_xxx, coeffs.xi_xxy, coeffs.xi_xyy, coeffs.xi_yyy
    quad = (
        xx * xx * (ck * (12 * e - 18) + ht * (8 * e**2 - 18 * e + 4))
        + xy * xy * (ck * (4 * e**3 - 14 * e**2 + 11 * e - 1)
                     + ht * (-8 * e**3 + 12 * e**2 - 7 * e + 3))
        + yy * yy * (ck * (-8 * e**3 - 8 * e**2 + 26 * e - 4)
                     + ht * (-4 * e**2 - 12 * e + 22))
        + xy * xx * (ck * (-18 * e**2 + 33 * e - 9)
                     + ht * (-8 * e**3 + 26 * e**2 - 19 * e + 7))
        + xy * yy * (ck * (8 * e**4 + 8 * e**3 - 32 * e**2 + 19 * e - 9)
                     + ht * (4 * e**3 + 20 * e**2 - 37 * e + 7))
        + xx * yy * (ck * (-12 * e**2 + 30 * e - 18)
                     + ht * (16 * e**2 - 30 * e + 14))
    )
    cub = (
        xxx * (-3 * ck - 3 * ht * e)
        + xyy * (-ck * (1 + 2 * e * e) - 3 * ht * e)
        + xxy * (3 * ck * e + ht * (1 + 2 * e * e))
        + yyy * (3 * ck * e + 3 * ht)
    )
    return (quad / (b * b * (1 + e) * (1 - e * e) * ht * (5 - 4 * e))
            + cub / (b * (1 - e * e) * ht))


def mu2_center_manifold(coeffs: TaylorCoefficients,
                        hopf: HopfPoint) -> LyapunovReport:
    """Center-manifold reduction at the Hopf point.

    Carries the critical gain eta_c and frequency omega0 from `hopf`
    through the projection constant D, the quadratic coefficients g20, g11,
    g02, the manifold corrections w20/w11 via E and F, and the resonant
    cubic coefficient g21 (pure single-delay form), then assembles

        c1(0) = (i/(2 omega0)) (g20 g11 - 2|g11|^2 - |g02|^2/3) + g21/2
        mu2   = -Re c1(0) / alpha'(0)
        beta2 = 2 Re c1(0)

    Parameters
    ----------
    coeffs : TaylorCoefficients
        Expansion of the right-hand side about the equilibrium.
    hopf : HopfPoint
        Critical point of the same coefficient set, from critical_eta.

    Returns
    -------
    LyapunovReport

    Raises
    ------
    DegenerateEpsilon
        If epsilon lies outside [0, 1).
    ZeroDenominator
        If xi_x + xi_y = 0, which collapses the correction constant F.
    """
    _eps_parts(coeffs.epsilon)
    xi_x, xi_y = coeffs.xi_x, coeffs.xi_y
    xi_xx, xi_xy, xi_yy = coeffs.xi_xx, coeffs.xi_xy, coeffs.xi_yy
    xi_xxx, xi_xxy = coeffs.xi_xxx, coeffs.xi_xxy
    xi_xyy, xi_yyy = coeffs.xi_xyy, coeffs.xi_yyy
    if xi_x + xi_y == 0.0:
        raise ZeroDenominator("xi_x + xi_y = 0 makes the w11 correction "
                              "constant F undefined")
    tau = coeffs.tau
    eta = hopf.eta_c
    w0 = hopf.omega0
    # the one trigonometric evaluation of omega0*tau everything shares
    B = cmath.exp(-1j * w0 * tau)
    Bc = B.conjugate()
    D = 1.0 / (1.0 + eta * tau * xi_y * Bc)
    Dc = D.conjugate()
    g20 = Dc * eta * (2 * xi_xx + 2 * xi_xy * B + 2 * xi_yy * B * B)
    g11 = Dc * eta * (2 * xi_xx + xi_xy * (B + Bc) + 2 * xi_yy)
    g02 = Dc * eta * (2 * xi_xx + 2 * xi_xy * Bc + 2 * xi_yy * Bc * Bc)
    E = -g20 / (Dc * (eta * xi_x + eta * xi_y * B * B - 2j * w0))
    F = -g11 / (Dc * eta * (xi_y + xi_x))

    def w20(theta: float) -> complex:
        ph = cmath.exp(1j * w0 * theta)
        return (-(g20 / (1j * w0)) * ph
                - (g02.conjugate() / (3j * w0)) / ph
                + E * ph * ph)

    def w11(theta: float) -> complex:
        ph = cmath.exp(1j * w0 * theta)
        return (g11 / (1j * w0)) * ph - (g11.conjugate() / (1j * w0)) / ph + F

    w20_0, w20_t = w20(0.0), w20(-tau)
    w11_0, w11_t = w11(0.0), w11(-tau)
    g21 = Dc * eta * (
        2 * xi_xx * (2 * w11_0 + w20_0)
        + xi_xy * (2 * w11_0 * B + w20_0 * Bc + 2 * w11_t + w20_t)
        + xi_yy * (4 * w11_t * B + 2 * w20_t * Bc)
        + 6 * xi_xxx
        + xi_xyy * (2 * B * B + 4)
        + xi_xxy * (2 * Bc + 4 * B)
        + 6 * xi_yyy * B
    )
    c1 = ((1j / (2 * w0))
          * (g20 * g11 - 2 * abs(g11) ** 2 - abs(g02) ** 2 / 3.0)
          + g21 / 2.0)
    alpha_prime = hopf.alpha_prime
    mu2 = -c1.real / alpha_prime
    beta2 = 2.0 * c1.real
    direction, cycle_stability = _classify_values(mu2, beta2)
    return LyapunovReport(mu2=mu2, beta2=beta2, c1_0=c1,
                          alpha_prime=alpha_prime, g20=g20, g11=g11,
                          g02=g02, g21=g21, D=D, E=E, F=F,
                          direction=direction,
                          cycle_stability=cycle_stability)


def g_tilde(epsilon: float) -> float:
    """Quadratic-coupling shape function of the Lyapunov coefficient.

    Negative on all of [0, 1): quadratic self-coupling alone always makes
    the bifurcation subcritical.  The b^2 scale is left to the caller so
    that mu2 = (xi_xx^2 / b^2) g_tilde(eps) for a purely quadratic model.
    """
    ck, ht = _eps_parts(epsilon)
    e = epsilon
    num = ck * (12 * e - 18) + ht * (8 * e * e - 18 * e + 4)
    return num / ((1 + e) * (1 - e * e) * ht * (5 - 4 * e))


def h_tilde(epsilon: float) -> float:
    """Cubic-coupling shape function; h_tilde(0) = -6/pi."""
    ck, ht = _eps_parts(epsilon)
    return (-3.0 * ck - 3.0 * epsilon * ht) / ((1 - epsilon * epsilon) * ht)


def mu2_cubic_specialization(coeffs: TaylorCoefficients) -> float:
    """mu2 for coefficient sets with only xi_xx and xi_xxx nonzero.

    Equals (xi_xx^2 / b^2) g_tilde(eps) + (xi_xxx / b) h_tilde(eps), and
    matches mu2_closed_form on such sets.
    """
    b = coeffs.b
    return ((coeffs.xi_xx ** 2 / (b * b)) * g_tilde(coeffs.epsilon)
            + (coeffs.xi_xxx / b) * h_tilde(coeffs.epsilon))


def mu2_quadratic_specialization(coeffs: TaylorCoefficients) -> float:
    """mu2 for unit quadratic self-coupling: g_tilde(eps)/b^2, always < 0."""
    b = coeffs.b
    return g_tilde(coeffs.epsilon) / (b * b)


def nicholson_mu2_shape(epsilon: float, x0_size: float = 1.0) -> float:
    """Lyapunov coefficient of the exponential birth-rate model at epsilon.

    The fully simplified form, a function of epsilon alone up to the
    1/x0^2 prefactor that carries the population scale (and therefore
    never changes the sign).
    """
    eps = epsilon
    ck, ht = _eps_parts(eps)
    first = ((1 - eps) / ((1 + eps) ** 2 * ht * (5 - 4 * eps))
             * (ck * (-8 * eps**3 - 8 * eps**2 + 26 * eps - 4)
                + ht * (-4 * eps**2 - 12 * eps + 22)))
    second = ((2 * eps - 1) / ((1 - eps * eps) * ht)
              * (3 * eps * ck + 3 * ht))
    return (first + second) / x0_size ** 2


def nicholson_mu2(spec: Nicholson) -> float:
    """Lyapunov coefficient of a concrete exponential birth-rate model.

    Evaluates nicholson_mu2_shape at epsilon = 1/(ln(p_rate/gamma) - 1).
    Agrees with mu2_closed_form applied to taylor_coefficients(spec).

    Raises
    ------
    DegenerateEpsilon
        If epsilon falls outside (0, 1).
    """
    q = math.log(spec.p_rate / spec.gamma)
    return nicholson_mu2_shape(1.0 / (q - 1.0), spec.x0_size)


def _classify_values(mu2: float, beta2: float) -> tuple[Direction, CycleStability]:
    if abs(mu2) < DEGENERACY_THRESHOLD:
        return Direction.DEGENERATE, CycleStability.DEGENERATE
    direction = Direction.SUPERCRITICAL if mu2 > 0 else Direction.SUBCRITICAL
    stability = CycleStability.STABLE if beta2 < 0 else CycleStability.UNSTABLE
    return direction, stability


def classify(report: LyapunovReport) -> tuple[Direction, CycleStability]:
    """Direction and cycle stability from the signs of mu2 and beta2.

    Supercritical iff mu2 > 0, stable cycle iff beta2 < 0;
    |mu2| below DEGENERACY_THRESHOLD is flagged Degenerate instead of
    guessing a side.
    """
    return _classify_values(report.mu2, report.beta2)
