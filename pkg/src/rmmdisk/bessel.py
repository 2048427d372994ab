"""Modified Bessel functions of the first kind, orders 0 and 1.

Only nonnegative real arguments are supported; that is all the radial
solution ever needs (arguments are sqrt(a)*r with a > 0, r >= 0).  The
ascending power series is used throughout: every term is positive, so the
float64 sum carries no cancellation and stays accurate to ~1e-15 relative
over the whole working range [0, 50].  Regularized combinations such as
I1(x)/x and its derivatives get their own entry points so callers never
divide by a vanishing radius.
"""

import numpy as np

# Series control: stop once the next term falls below this relative to the
# accumulated sum; hard cap on the number of terms.
_REL_TOL = 1e-17
_MAX_TERMS = 200


def _check_domain(x, name):
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name}: argument must be finite")
    if np.any(arr < 0.0):
        raise ValueError(f"{name}: argument must be nonnegative")
    return arr


def _sum_series(x, first_term, ratio):
    """Sum first_term * prod_{j<=k} ratio(j, t) over k, with t = x^2/4.

    ratio(k, t) gives term_{k}/term_{k-1}; all quantities elementwise on
    arrays.  Truncates when every element's next term is negligible.
    """
    t = 0.25 * x * x
    term = np.array(first_term, dtype=float, copy=True)
    total = term.copy()
    for k in range(1, _MAX_TERMS + 1):
        term = term * ratio(k, t)
        total += term
        if np.all(term <= _REL_TOL * np.abs(total)):
            break
    return total


def _as_result(value, scalar):
    return float(value) if scalar else value


def bessel_i0(x):
    """I0(x) for x >= 0 (scalar or ndarray)."""
    arr = _check_domain(x, "bessel_i0")
    out = _sum_series(arr, np.ones_like(arr), lambda k, t: t / (k * k))
    return _as_result(out, np.isscalar(x))


def bessel_i1(x):
    """I1(x) for x >= 0 (scalar or ndarray)."""
    arr = _check_domain(x, "bessel_i1")
    out = _sum_series(arr, 0.5 * arr, lambda k, t: t / (k * (k + 1)))
    return _as_result(out, np.isscalar(x))


def bessel_i1_over_x(x):
    """I1(x)/x, continuous through x = 0 where the limit is 1/2."""
    arr = _check_domain(x, "bessel_i1_over_x")
    first = np.full_like(arr, 0.5)
    out = _sum_series(arr, first, lambda k, t: t / (k * (k + 1)))
    return _as_result(out, np.isscalar(x))


def di1_over_x_dx(x):
    """d/dx [I1(x)/x] = I0(x)/x - 2 I1(x)/x^2, regular at x = 0.

    Series sum_{k>=1} k x^(2k-1) / (4^k k! (k+1)!) = x/8 + x^3/96 + ...;
    all terms positive, so no cancellation at any x.
    """
    arr = _check_domain(x, "di1_over_x_dx")
    first = arr / 8.0
    out = _sum_series(arr, first, lambda k, t: t / (k * (k + 2)))
    return _as_result(out, np.isscalar(x))


def d2i1_over_x_dx2(x):
    """d^2/dx^2 [I1(x)/x] = I1/x - 3 I0/x^2 + 6 I1/x^3, regular at x = 0.

    Series sum_{k>=1} k (2k-1) x^(2k-2) / (4^k k! (k+1)!) = 1/8 + x^2/32 + ...
    """
    arr = _check_domain(x, "d2i1_over_x_dx2")
    first = np.full_like(arr, 0.125)
    out = _sum_series(
        arr, first, lambda k, t: t * (2 * k + 1) / (k * (2 * k - 1) * (k + 2))
    )
    return _as_result(out, np.isscalar(x))
