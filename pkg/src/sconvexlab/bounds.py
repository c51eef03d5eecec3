"""Evaluators for the defect quantity and every inequality bound.

The central left-hand side is the Bullen-type defect

    | (1/(b-a)) int_a^b f - 1/2 * ( (b f(a) - a f(b))/(b-a) + f((a+b)/2) ) |

Note the mixed endpoint term b f(a) - a f(b): unlike the trapezoid defect,
this quantity does NOT vanish for affine f.  The theorems bound the absolute
value; the signed value is kept available because the integral identity that
generates all of them is an identity on signed quantities.

Three families of right-hand sides live here:

* bound_se2 / bound_se5 / bound_se6 - the s-convex bounds, for derivatives
  whose magnitude (or its q-th power) is s-convex in the second sense;
* bound_ms - the s = 1 convex-case bounds, implemented literally from their
  own printed coefficients so the s -> 1 reductions are genuine two-sided
  checks rather than the same code path twice;
* bound_prior and the Hermite-Hadamard / Bullen chains - classical results
  used as cross-checks and reduction oracles.

Hypothesis certification is the caller's duty throughout; see the harness.
All evaluators are pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .errors import DomainError, MissingParam
from .funcmodel import FuncHandle, as_s
from .means import OrderedInterval, arithmetic_mean, gen_log_mean
from .quadrature import integrate

DEFAULT_BOUND_TOL = 1e-9

PRIOR_KINDS = ("DA", "PP", "PP_CONCAVE", "ADK")
MS_KINDS = ("S1", "S2", "S3")


@dataclass(frozen=True)
class HolderPair:
    """Conjugate exponents 1/p + 1/q = 1 with q > 1 (hence p > 1)."""

    q: float
    p: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.q) and self.q > 1.0):
            raise DomainError(f"Holder exponent requires q > 1, got {self.q}")
        object.__setattr__(self, "p", self.q / (self.q - 1.0))


@dataclass(frozen=True)
class BoundReport:
    """One evaluated inequality: sides, margin, and the verdict."""

    theorem_id: str
    a: float
    b: float
    s: Optional[float]
    q: Optional[float]
    lhs: float
    rhs: float
    margin: float
    holds: bool
    tol: float


def make_report(theorem_id, iv, s, q, lhs, rhs, tol=DEFAULT_BOUND_TOL) -> BoundReport:
    margin = rhs - lhs
    holds = margin >= -max(tol, tol * abs(rhs))
    return BoundReport(theorem_id, iv.a, iv.b, s, q, lhs, rhs, margin, holds, tol)


def mean_value(f: FuncHandle, iv: OrderedInterval) -> float:
    """Integral mean of f over the interval; exact route when available."""
    if f.exact_integral is not None:
        return f.exact_integral(iv) / iv.width
    return integrate(f.value, iv.a, iv.b).value / iv.width


def bullen_defect_signed(f: FuncHandle, iv: OrderedInterval) -> float:
    a, b = iv.a, iv.b
    mixed = (b * f.value(a) - a * f.value(b)) / (b - a)
    return mean_value(f, iv) - 0.5 * (mixed + f.value(iv.midpoint))


def bullen_type_defect(f: FuncHandle, iv: OrderedInterval) -> float:
    """Absolute Bullen-type defect, the quantity all se-bounds dominate."""
    return abs(bullen_defect_signed(f, iv))


def lemma_identity_rhs(f: FuncHandle, iv: OrderedInterval) -> float:
    """The two weighted t-integrals of f' whose sum equals the signed defect.

        1/4 int_0^1 (t b + (1-t) a) f'((1-t)/2 b + (1+t)/2 a) dt
      + 1/4 int_0^1 (t a + (1-t) b) f'((1-t)/2 a + (1+t)/2 b) dt
    """
    a, b = iv.a, iv.b
    df = f.derivative

    def first(t: float) -> float:
        return (t * b + (1.0 - t) * a) * df(0.5 * (1.0 - t) * b + 0.5 * (1.0 + t) * a)

    def second(t: float) -> float:
        return (t * a + (1.0 - t) * b) * df(0.5 * (1.0 - t) * a + 0.5 * (1.0 + t) * b)

    return 0.25 * integrate(first, 0.0, 1.0).value + 0.25 * integrate(second, 0.0, 1.0).value


def _se2_coeffs(a: float, b: float, s: float) -> tuple[float, float]:
    pow1 = s * 2.0 ** (s + 1.0) + s + 2.0
    pow2 = 2.0 ** (s + 2.0) - s - 2.0
    denom = 2.0 ** (s + 2.0) * (s + 1.0) * (s + 2.0)
    return (b * pow1 + a * pow2) / denom, (a * pow1 + b * pow2) / denom


def bound_se2(df_a: float, df_b: float, iv: OrderedInterval, s) -> float:
    """Endpoint-weighted bound for s-convex |f'|: C1*|f'(a)| + C2*|f'(b)|."""
    sv = as_s(s)
    c1, c2 = _se2_coeffs(iv.a, iv.b, sv)
    return c1 * df_a + c2 * df_b


def bound_se5(df_a: float, df_b: float, iv: OrderedInterval, s, hq: HolderPair) -> float:
    """Holder-split bound for s-convex |f'|^q, scaled by L_p(a, b)."""
    sv = as_s(s)
    q = hq.q
    w = 2.0 ** (sv + 1.0) - 1.0
    prefactor = gen_log_mean(iv, hq.p) / (4.0 * (2.0 ** sv * (sv + 1.0)) ** (1.0 / q))
    bracket = (df_b ** q + w * df_a ** q) ** (1.0 / q) + (df_a ** q + w * df_b ** q) ** (1.0 / q)
    return prefactor * bracket


def bound_se6(df_a: float, df_b: float, iv: OrderedInterval, s, q: float) -> float:
    """Power-mean bound for s-convex |f'|^q, scaled by A^(1-1/q)(a, b).

    The theorem is stated for q > 1; q = 1 is accepted because the bound
    then collapses algebraically to bound_se2.
    """
    sv = as_s(s)
    if not q >= 1.0:
        raise DomainError(f"power-mean bound requires q >= 1, got {q}")
    a, b = iv.a, iv.b
    w1 = sv * 2.0 ** (sv + 1.0) + 1.0
    w2 = 2.0 ** (sv + 2.0) - sv - 3.0
    prefactor = arithmetic_mean(iv) ** (1.0 - 1.0 / q) / (
        2.0 ** (2.0 * q + sv) * (sv + 1.0) * (sv + 2.0)
    ) ** (1.0 / q)
    br1 = (a * sv + a + b) * df_b ** q + (b * w1 + a * w2) * df_a ** q
    br2 = (b * sv + b + a) * df_a ** q + (a * w1 + b * w2) * df_b ** q
    return prefactor * (br1 ** (1.0 / q) + br2 ** (1.0 / q))


def bound_ms(kind: str, df_a: float, df_b: float, iv: OrderedInterval, q: Optional[float] = None) -> float:
    """The three convex-case bounds, from their printed coefficients.

    S1 needs no q; S2 needs q > 1; S3 needs q >= 1.  Kept independent of the
    se-family on purpose: these serve as reduction oracles at s = 1.
    """
    kind = kind.upper()
    a, b = iv.a, iv.b
    if kind == "S1":
        return (5.0 * a + 7.0 * b) / 48.0 * df_a + (7.0 * a + 5.0 * b) / 48.0 * df_b
    if kind == "S2":
        if q is None:
            raise MissingParam("S2 bound requires q > 1")
        hq = HolderPair(float(q))
        bracket = (df_b ** q + 3.0 * df_a ** q) ** (1.0 / q) + (df_a ** q + 3.0 * df_b ** q) ** (1.0 / q)
        return gen_log_mean(iv, hq.p) / 4.0 ** (1.0 + 1.0 / q) * bracket
    if kind == "S3":
        if q is None:
            raise MissingParam("S3 bound requires q >= 1")
        q = float(q)
        if not q >= 1.0:
            raise DomainError(f"S3 bound requires q >= 1, got {q}")
        br1 = df_b ** q * (2.0 * a + b) + df_a ** q * (4.0 * a + 5.0 * b)
        br2 = df_a ** q * (a + 2.0 * b) + df_b ** q * (5.0 * a + 4.0 * b)
        pref = arithmetic_mean(iv) ** (1.0 - 1.0 / q) / (4.0 * 12.0 ** (1.0 / q))
        return pref * (br1 ** (1.0 / q) + br2 ** (1.0 / q))
    raise DomainError(f"unknown convex-case bound kind {kind!r}")


def hadamard_triple(f: FuncHandle, iv: OrderedInterval) -> tuple[float, float, float]:
    """(midpoint value, integral mean, endpoint average); nondecreasing for convex f."""
    left = f.value(iv.midpoint)
    mid = mean_value(f, iv)
    right = 0.5 * (f.value(iv.a) + f.value(iv.b))
    return left, mid, right


def hadamard_s_triple(f: FuncHandle, u: float, v: float, s) -> tuple[float, float, float]:
    """The s-convex double inequality chain on [u, v], u = 0 allowed.

    Returns (2^(s-1) f((u+v)/2), integral mean, (f(u)+f(v))/(s+1)).  The
    endpoint-average constant 1/(s+1) admits an equality instance, e.g.
    f = sqrt on (0, 1) with s = 1/2.
    """
    sv = as_s(s)
    if not (0.0 <= u < v):
        raise DomainError(f"s-convex chain requires 0 <= u < v, got ({u}, {v})")
    left = 2.0 ** (sv - 1.0) * f.value(0.5 * (u + v))
    if u > 0.0 and f.exact_integral is not None:
        mid = f.exact_integral(OrderedInterval(u, v)) / (v - u)
    else:
        mid = integrate(f.value, u, v).value / (v - u)
    right = (f.value(u) + f.value(v)) / (sv + 1.0)
    return left, mid, right


def bullen_classic_rhs(f: FuncHandle, iv: OrderedInterval) -> float:
    """(f(midpoint) + endpoint average) / 2; dominates the mean for convex f."""
    return 0.5 * (f.value(iv.midpoint) + 0.5 * (f.value(iv.a) + f.value(iv.b)))


def trapezoid_defect(f: FuncHandle, iv: OrderedInterval) -> float:
    """| endpoint average - integral mean |, the classical trapezoid error."""
    return abs(0.5 * (f.value(iv.a) + f.value(iv.b)) - mean_value(f, iv))


def bound_prior(kind: str, f: FuncHandle, iv: OrderedInterval, q: Optional[float] = None) -> float:
    """Classical trapezoid-defect bounds.

    DA: (b-a)/8 * (|f'(a)| + |f'(b)|)                       convex |f'|
    PP: (b-a)/4 * ((|f'(a)|^q + |f'(b)|^q)/2)^(1/q)          convex |f'|^q
    PP_CONCAVE: (b-a)/4 * |f'((a+b)/2)|                      concave |f'|^q
    ADK: (b-a)/4 * ((q-1)/(2q-1))^(1-1/q)
          * (|f'((3a+b)/4)| + |f'((a+3b)/4)|)                concave |f'|^q

    Certifying the hypothesis is the caller's duty.
    """
    kind = kind.upper()
    a, b = iv.a, iv.b
    width = b - a
    df = f.derivative
    if kind == "DA":
        return width / 8.0 * (abs(df(a)) + abs(df(b)))
    if kind == "PP":
        if q is None:
            raise MissingParam("PP bound requires q >= 1")
        q = float(q)
        return width / 4.0 * (0.5 * (abs(df(a)) ** q + abs(df(b)) ** q)) ** (1.0 / q)
    if kind == "PP_CONCAVE":
        return width / 4.0 * abs(df(iv.midpoint))
    if kind == "ADK":
        if q is None:
            raise MissingParam("ADK bound requires q >= 1")
        q = float(q)
        if not q >= 1.0:
            raise DomainError(f"ADK bound requires q >= 1, got {q}")
        weight = ((q - 1.0) / (2.0 * q - 1.0)) ** (1.0 - 1.0 / q)
        return width / 4.0 * weight * (abs(df((3.0 * a + b) / 4.0)) + abs(df((a + 3.0 * b) / 4.0)))
    raise DomainError(f"unknown prior-art bound kind {kind!r}")


def evaluate_bound(
    theorem: str,
    f: FuncHandle,
    iv: OrderedInterval,
    s: Optional[float] = None,
    q: Optional[float] = None,
    tol: float = DEFAULT_BOUND_TOL,
) -> BoundReport:
    """Evaluate one named inequality on explicit inputs (no certification).

    Defect-style theorems report lhs = defect, rhs = bound.  Chain theorems
    (hh, hhs, bullen) report the tighter leg of the chain as (lhs, rhs).
    """
    tid = theorem.lower()
    df_a, df_b = abs(f.derivative(iv.a)), abs(f.derivative(iv.b))

    if tid in ("se2", "se5", "se6"):
        if s is None:
            raise MissingParam(f"{tid} requires s")
        lhs = bullen_type_defect(f, iv)
        if tid == "se2":
            rhs = bound_se2(df_a, df_b, iv, s)
        elif tid == "se5":
            if q is None:
                raise MissingParam("se5 requires q > 1")
            rhs = bound_se5(df_a, df_b, iv, s, HolderPair(q))
        else:
            if q is None:
                raise MissingParam("se6 requires q >= 1")
            rhs = bound_se6(df_a, df_b, iv, s, q)
        return make_report(tid, iv, as_s(s), q, lhs, rhs, tol)

    if tid in ("s1", "s2", "s3"):
        lhs = bullen_type_defect(f, iv)
        rhs = bound_ms(tid.upper(), df_a, df_b, iv, q)
        return make_report(tid, iv, None, q if tid != "s1" else None, lhs, rhs, tol)

    if tid in ("da", "pp", "ppc", "adk"):
        kind = {"da": "DA", "pp": "PP", "ppc": "PP_CONCAVE", "adk": "ADK"}[tid]
        lhs = trapezoid_defect(f, iv)
        rhs = bound_prior(kind, f, iv, q)
        q_used = None if tid == "da" else q
        return make_report(tid, iv, None, q_used, lhs, rhs, tol)

    if tid == "bullen":
        return make_report(tid, iv, None, None, mean_value(f, iv), bullen_classic_rhs(f, iv), tol)

    if tid in ("hh", "hhs"):
        if tid == "hh":
            left, mid, right = hadamard_triple(f, iv)
        else:
            if s is None:
                raise MissingParam("hhs requires s")
            left, mid, right = hadamard_s_triple(f, iv.a, iv.b, s)
        if mid - left <= right - mid:
            lhs, rhs = left, mid
        else:
            lhs, rhs = mid, right
        sv = as_s(s) if tid == "hhs" else None
        return make_report(tid, iv, sv, None, lhs, rhs, tol)

    raise DomainError(f"unknown theorem id {theorem!r}")
