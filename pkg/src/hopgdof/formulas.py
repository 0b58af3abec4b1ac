"""Closed-form sum-GDoF values for the layered symmetric L-hop 2x2 interference
network, evaluated in exact rational arithmetic.

The network has L cascaded 2x2 hops: direct links of strength exponent 1,
cross links of strength exponent alpha.  Everything here is a piecewise
rational function of alpha, so all evaluation uses ``fractions.Fraction`` and
comparisons are exact.  Branch intervals are closed and overlap at their
endpoints; adjacent branches agree there (asserted by the test suite) and the
lower-indexed branch supplies the regime tag.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

__all__ = [
    "GdofValue",
    "OpenProblemError",
    "as_alpha",
    "as_hops",
    "sum_gdof_fp",
    "sum_gdof_perfect",
    "sum_gdof_df_fp",
    "sum_gdof_df_perfect",
    "converse_bound",
    "scaling_map_check",
    "min_identity_check",
    "weak_breakpoints",
    "strong_breakpoints",
]


class OpenProblemError(ValueError):
    """Raised for parameter ranges whose sum-GDoF is an open problem.

    The strong interference regime 1 < alpha < L + 1 with an odd number of
    hops has no known characterization; values there cannot be fabricated.
    """


@dataclass(frozen=True)
class GdofValue:
    """An exact sum-GDoF value (or bound) with its active regime branch."""

    value: Fraction
    regime: str
    kind: str = "exact"  # exact | converse-bound | achievable-lower

    def __post_init__(self):
        if self.value < 0:
            raise ValueError(f"negative GDoF value {self.value}")


def as_alpha(alpha) -> Fraction:
    """Coerce a cross-link exponent to an exact non-negative Fraction.

    Accepts Fractions, ints, and "p/q" strings.  Floats are rejected: the
    formula layer promises exact equality semantics.
    """
    if isinstance(alpha, float):
        raise TypeError("alpha must be exact (Fraction, int, or 'p/q' string), not float")
    a = Fraction(alpha)
    if a < 0:
        raise ValueError(f"alpha must be non-negative, got {a}")
    return a


def as_hops(L) -> int:
    """Validate a hop count: integral and at least 2."""
    if not isinstance(L, Rational) or Fraction(L).denominator != 1:
        raise TypeError(f"hop count must be an integer, got {L!r}")
    L = int(L)
    if L < 2:
        raise ValueError(f"multihop formulas need L >= 2, got {L}")
    return L


# ---------------------------------------------------------------------------
# piecewise helpers
# ---------------------------------------------------------------------------

def _pick(alpha: Fraction, branches) -> GdofValue:
    """Evaluate a piecewise definition given as (lo, hi, fn, tag) tuples.

    Intervals are closed; the first matching branch wins, which makes the
    regime tag of a shared endpoint the lower-indexed branch.  Branch overlap
    consistency is a test-suite invariant, not rechecked here.
    """
    for lo, hi, fn, tag in branches:
        if (lo is None or alpha >= lo) and (hi is None or alpha <= hi):
            return GdofValue(fn(alpha), tag)
    raise AssertionError(f"no branch matched alpha={alpha}")


def _weak_fp(alpha: Fraction, L: int) -> GdofValue:
    """Sum-GDoF for alpha <= 1 (any L >= 2), finite-precision CSIT."""
    m = Fraction(2**L - 1)
    return _pick(alpha, [
        (None, Fraction(1, 2), lambda a: 2 - a - a / m, "weak-1"),
        (Fraction(1, 2), Fraction(2**L, 2 ** (L + 1) - 1),
         lambda a: 1 + a - (1 - a) / m, "weak-2"),
        (Fraction(2**L, 2 ** (L + 1) - 1), Fraction(1), lambda a: 2 - a, "weak-3"),
    ])


def _strong_fp_even(alpha: Fraction, L: int) -> GdofValue:
    """Sum-GDoF for alpha >= 1 and even L (relay relabeling argument)."""
    m = Fraction(2**L - 1)
    return _pick(alpha, [
        (Fraction(1), 2 - Fraction(1, 2**L), lambda a: 2 * a - 1, "strong-1"),
        (2 - Fraction(1, 2**L), Fraction(2),
         lambda a: a + 1 - (a - 1) / m, "strong-2"),
        (Fraction(2), None, lambda a: 2 * a - 1 - 1 / m, "strong-3"),
    ])


# ---------------------------------------------------------------------------
# public closed forms
# ---------------------------------------------------------------------------

def sum_gdof_fp(alpha, L) -> GdofValue:
    """Exact sum-GDoF under finite-precision CSIT.

    Covers: alpha <= 1 for every L >= 2; alpha >= 1 for even L; and the very
    strong regime alpha >= L + 1 for odd L (value 2L, the min-cut).  The
    remaining odd-L strong regime 1 < alpha < L + 1 raises OpenProblemError.
    """
    a, L = as_alpha(alpha), as_hops(L)
    if a <= 1:
        return _weak_fp(a, L)
    if L % 2 == 0:
        return _strong_fp_even(a, L)
    if a >= L + 1:
        return GdofValue(Fraction(2 * L), "very-strong-min-cut")
    raise OpenProblemError(
        f"open-problem: odd L strong regime (L={L}, 1 < alpha={a} < {L + 1})")


def sum_gdof_perfect(alpha) -> GdofValue:
    """Optimal sum-GDoF of the 2-hop network under perfect CSIT."""
    a = as_alpha(alpha)
    return _pick(a, [
        (None, Fraction(1), lambda x: Fraction(2), "perfect-weak"),
        (Fraction(1), None, lambda x: 2 * x, "perfect-strong"),
    ])


def sum_gdof_df_fp(alpha) -> GdofValue:
    """2-hop sum-GDoF of pure decode-and-forward (per-hop X channel),
    finite-precision CSIT."""
    a = as_alpha(alpha)
    return _pick(a, [
        (None, Fraction(1, 2), lambda x: 2 - 2 * x, "df-fp-1"),
        (Fraction(1, 2), Fraction(2, 3), lambda x: 2 * x, "df-fp-2"),
        (Fraction(2, 3), Fraction(1), lambda x: 2 - x, "df-fp-3"),
        (Fraction(1), Fraction(3, 2), lambda x: 2 * x - 1, "df-fp-4"),
        (Fraction(3, 2), Fraction(2), lambda x: Fraction(2), "df-fp-5"),
        (Fraction(2), None, lambda x: 2 * x - 2, "df-fp-6"),
    ])


def sum_gdof_df_perfect(alpha) -> GdofValue:
    """2-hop sum-GDoF of pure decode-and-forward under perfect CSIT."""
    a = as_alpha(alpha)
    return _pick(a, [
        (None, Fraction(1, 2), lambda x: 2 - 2 * x, "df-p-1"),
        (Fraction(1, 2), Fraction(3, 4), lambda x: 2 * x, "df-p-2"),
        (Fraction(3, 4), Fraction(1), lambda x: Fraction(6 - 2 * x, 3), "df-p-3"),
        (Fraction(1), Fraction(4, 3), lambda x: Fraction(6 * x - 2, 3), "df-p-4"),
        (Fraction(4, 3), Fraction(2), lambda x: Fraction(2), "df-p-5"),
        (Fraction(2), None, lambda x: 2 * x - 2, "df-p-6"),
    ])


def converse_bound(alpha, L) -> GdofValue:
    """Minimum of the information-theoretic upper bounds valid at alpha <= 1.

    Three bounds enter: the recursive per-hop chain whose closed form is
    1 + max(alpha, 1-alpha) - (1 - max(alpha, 1-alpha)) / (2^L - 1), valid
    for alpha <= 2/3 (it consumes the genie-aided single-hop bound proved
    there); the full-cooperation broadcast bound 2 - alpha; and the per-user
    unicast cap of 2.  Strong-regime converses follow by the scaling map
    instead (see scaling_map_check), hence the alpha <= 1 domain.
    """
    a, L = as_alpha(alpha), as_hops(L)
    if a > 1:
        raise ValueError("converse_bound is defined for alpha <= 1; use the "
                         "scaling map for the strong regime")
    m = Fraction(2**L - 1)
    bounds = [(Fraction(2 - a), "bc-cooperation"), (Fraction(2), "unicast-cap")]
    if a <= Fraction(2, 3):
        mx = max(a, 1 - a)
        bounds.append((1 + mx - (1 - mx) / m, "recursion-chain"))
    value, tag = min(bounds, key=lambda vt: vt[0])
    return GdofValue(value, tag, kind="converse-bound")


def scaling_map_check(alpha, L) -> bool:
    """True iff sum_gdof_fp(alpha, L) == alpha * sum_gdof_fp(1/alpha, L).

    Scaling every link strength by a common factor scales the GDoF by that
    factor; relabeling relays in every other hop swaps direct/cross roles,
    which requires an even number of hops.
    """
    a, L = as_alpha(alpha), as_hops(L)
    if a < 1:
        raise ValueError("scaling_map_check expects alpha >= 1")
    if L % 2 != 0:
        raise ValueError("scaling_map_check expects even L")
    return sum_gdof_fp(a, L).value == a * sum_gdof_fp(1 / a, L).value


def min_identity_check(alpha) -> bool:
    """True iff DF under finite precision equals min(DF under perfect CSIT,
    2-hop sum-GDoF under finite precision), exactly."""
    a = as_alpha(alpha)
    lhs = sum_gdof_df_fp(a).value
    rhs = min(sum_gdof_df_perfect(a).value, sum_gdof_fp(a, 2).value)
    return lhs == rhs


# ---------------------------------------------------------------------------
# breakpoints (exported so tests and sweeps can hit them exactly)
# ---------------------------------------------------------------------------

def weak_breakpoints(L) -> list[Fraction]:
    """Interior breakpoints of the weak-regime piecewise formula."""
    L = as_hops(L)
    return [Fraction(1, 2), Fraction(2**L, 2 ** (L + 1) - 1)]


def strong_breakpoints(L) -> list[Fraction]:
    """Interior breakpoints of the even-L strong-regime piecewise formula."""
    L = as_hops(L)
    return [2 - Fraction(1, 2**L), Fraction(2)]
