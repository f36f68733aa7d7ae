"""
Scalar root finding for the middle-state pressure of Riemann problems.

All functions here expect a function that is strictly decreasing or
increasing on the bracket; the Riemann mismatch functions are monotone in
the middle pressure.
"""

import logging

import numpy as np

from droplet.fronts import config
from droplet.fronts.exc import BracketError, NoConvergence


_log = logging.getLogger('droplet.fronts.roots')


def _opposite(fa, fb):
    return (fa <= 0 <= fb) or (fb <= 0 <= fa)


def expand_bracket(f, lo, hi, factor=config.BRACKET_FACTOR,
                   max_widen=config.BRACKET_MAX_WIDEN):
    """Widen the positive interval [lo, hi] geometrically until f changes
    sign across it. Returns (lo, hi, f(lo), f(hi)).

    >>> expand_bracket(lambda x: 5.0 - x, 1.0, 2.0)[:2]
    (0.1, 20.0)
    """
    if not 0 < lo < hi:
        raise ValueError("bracket must satisfy 0 < lo < hi: %r, %r" % (lo, hi))
    flo, fhi = f(lo), f(hi)
    widen = 0
    while not _opposite(flo, fhi):
        if widen == max_widen:
            raise BracketError("no sign change on [%r, %r] after %d widenings"
                               % (lo, hi, widen))
        lo, hi = lo / factor, hi * factor
        flo, fhi = f(lo), f(hi)
        widen += 1
    if widen:
        _log.debug("bracket widened %d times to [%r, %r]", widen, lo, hi)
    return lo, hi, flo, fhi


def bisect(f, lo, hi, tol=config.ROOT_TOL, max_iter=200):
    """Plain bisection; f(lo) and f(hi) must have opposite signs.

    >>> round(bisect(lambda x: x * x - 2.0, 0.0, 2.0, tol=1e-14), 12)
    1.414213562373
    """
    flo, fhi = f(lo), f(hi)
    if not _opposite(flo, fhi):
        raise BracketError("no sign change on [%r, %r]" % (lo, hi))
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        fmid = f(mid)
        if abs(fmid) <= tol or hi - lo <= 1e-16 * max(1.0, abs(mid)):
            return mid
        if _opposite(flo, fmid):
            hi, fhi = mid, fmid
        else:
            lo, flo = mid, fmid
    return 0.5 * (lo + hi)


def newton_bisect(f, lo, hi, x0=None, tol=config.ROOT_TOL,
                  max_iter=config.ROOT_MAX_ITER, flo=None, fhi=None):
    """Damped Newton iteration kept inside a verified bracket.

    The derivative is a central difference. Whenever a Newton step leaves
    the current bracket, or fails to halve |f|, the iterate falls back to
    the bracket midpoint. The bracket is tightened with every evaluation,
    so the iteration cannot lose the root.

    >>> round(newton_bisect(lambda x: np.log(x), 0.1, 10.0), 9)
    1.0
    """
    if flo is None:
        flo = f(lo)
    if fhi is None:
        fhi = f(hi)
    if abs(flo) <= tol:
        return lo
    if abs(fhi) <= tol:
        return hi
    if not _opposite(flo, fhi):
        raise BracketError("no sign change on [%r, %r]" % (lo, hi))
    x = 0.5 * (lo + hi) if x0 is None or not lo < x0 < hi else x0
    fx = f(x)
    for _ in range(max_iter):
        if abs(fx) <= tol:
            return x
        if _opposite(flo, fx):
            hi, fhi = x, fx
        else:
            lo, flo = x, fx
        # relative step keeps x - h inside the positive pressure axis
        h = 1e-7 * abs(x) if x != 0 else 1e-7
        slope = (f(x + h) - f(x - h)) / (2.0 * h)
        step_ok = False
        if slope != 0.0:
            damping = 1.0
            while damping >= 0.25:
                cand = x - damping * fx / slope
                if lo < cand < hi:
                    fcand = f(cand)
                    if abs(fcand) < 0.5 * abs(fx) or abs(fcand) <= tol:
                        x, fx = cand, fcand
                        step_ok = True
                        break
                damping *= 0.5
        if not step_ok:
            x = 0.5 * (lo + hi)
            fx = f(x)
        if hi - lo <= 1e-15 * max(1.0, abs(x)):
            return x
    raise NoConvergence(max_iter, x, abs(fx))


def grid_bracket(f_vec, lo, hi, n=2000):
    """Locate the first sign change of a vectorized f on a uniform grid of
    n points over [lo, hi]. Returns the sub-interval (a, b)."""
    xs = np.linspace(lo, hi, n)
    fs = np.asarray(f_vec(xs), dtype=float)
    signs = np.sign(fs)
    zero = np.nonzero(signs == 0)[0]
    if len(zero):
        x = xs[zero[0]]
        return x, x
    change = np.nonzero(signs[:-1] * signs[1:] < 0)[0]
    if not len(change):
        raise BracketError("no sign change on grid over [%r, %r]" % (lo, hi))
    k = change[0]
    return xs[k], xs[k + 1]
