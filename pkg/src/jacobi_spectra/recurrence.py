"""Three-term recurrence evaluation in an overflow-safe representation.

Generalized eigenvectors of a Jacobi matrix solve

    a(n) u(n+1) = (lam - b(n)) u(n) - a(n-1) u(n-1)      (n >= 1)

with a free initial pair (u(0), u(1)) != (0, 0).  At generic spectral
parameters these solutions grow exponentially, so raw binary64 values
overflow within a few hundred steps for the sequence families of interest.
We therefore carry the *direction* of the pair (u(n), u(n+1)) on the unit
circle plus one accumulated log-magnitude:

    u(n)   = x * exp(logscale)
    u(n+1) = y * exp(logscale),     x**2 + y**2 == 1.

Every downstream diagnostic only needs scale-free combinations of
consecutive entries, so nothing is lost.  Exact zeros (e.g. odd-index
polynomial values at lam = 0 for symmetric matrices) are representable:
the corresponding coordinate is exactly 0.0.
"""

import csv
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

__all__ = [
    "EigvecInit",
    "PropagationState",
    "PolyTrace",
    "propagate",
    "poly_eval",
    "poly_init",
    "l2_partial_sums",
    "log_l2_partial_sums",
    "write_trace_csv",
]

# exp(logscale) overflows binary64 past this
_LOG_HUGE = math.log(np.finfo(float).max)


@dataclass(frozen=True)
class EigvecInit:
    """Initial pair (u(0), u(1)); must not be the zero vector."""

    u0: float
    u1: float

    def __post_init__(self):
        if self.u0 == 0.0 and self.u1 == 0.0:
            raise DomainError("initial pair must be nonzero")


@dataclass(frozen=True)
class PropagationState:
    """Normalized snapshot of (u(n), u(n+1)).

    ``x`` and ``y`` are the unit-circle coordinates of u(n) and u(n+1);
    ``logscale`` is the natural log of the true pair magnitude.
    """

    n: int
    x: float
    y: float
    logscale: float

    def u_n(self):
        return self.x * math.exp(self.logscale)

    def u_next(self):
        return self.y * math.exp(self.logscale)

    def log_abs_u(self):
        """(sign, log|u(n)|); log is -inf at an exact zero."""
        if self.x == 0.0:
            return 0, float("-inf")
        return (1 if self.x > 0 else -1), math.log(abs(self.x)) + self.logscale


def poly_init(seq, lam):
    """The orthonormal-polynomial initial pair (p0, p1) = (1, (lam-b0)/a0)."""
    return EigvecInit(1.0, (lam - seq.b(0)) / seq.a(0))


def propagate(seq, lam, init, n_max):
    """Yield :class:`PropagationState` for n = 0 .. n_max.

    The recurrence is applied from n = 1 on; the state at n = 0 is the
    normalized initial pair itself.
    """
    if n_max < 1:
        raise DomainError("n_max must be >= 1")
    u0, u1 = float(init.u0), float(init.u1)
    r = math.hypot(u0, u1)
    x, y = u0 / r, u1 / r
    logscale = math.log(r)
    yield PropagationState(0, x, y, logscale)
    a_prev = seq.a(0)
    for n in range(1, n_max + 1):
        a_n = seq.a(n)
        b_n = seq.b(n)
        # a(n) u(n+1) = (lam - b(n)) u(n) - a(n-1) u(n-1), scale-free
        y_new = ((lam - b_n) * y - a_prev * x) / a_n
        r = math.hypot(y, y_new)
        # r > 0: y == 0 forces y_new = -a(n-1) x / a(n) != 0 since (x,y) != 0
        x, y = y / r, y_new / r
        logscale += math.log(r)
        yield PropagationState(n, x, y, logscale)
        a_prev = a_n


class PolyTrace:
    """Values p(0)..p(N) of the orthonormal polynomials at a fixed lam.

    Each value is stored as (sign, log|p|), with sign 0 flagging an exact
    zero.  p(0) = 1 always.
    """

    def __init__(self, lam, signs, log_abs):
        self.lam = float(lam)
        self.signs = np.asarray(signs, dtype=np.int8)
        self.log_abs = np.asarray(log_abs, dtype=float)

    def __len__(self):
        return len(self.signs)

    def value(self, n):
        """p(n) as a float; inf with the right sign if not representable."""
        if self.signs[n] == 0:
            return 0.0
        return float(self.signs[n]) * math.exp(min(self.log_abs[n], _LOG_HUGE + 1))

    def values(self):
        out = np.where(self.signs == 0, 0.0,
                       self.signs * np.exp(np.minimum(self.log_abs, _LOG_HUGE + 1)))
        return out

    def is_zero(self, n):
        return self.signs[n] == 0


def poly_eval(seq, lam, n_max):
    """Evaluate p(0)..p(n_max) at lam via log-scaled propagation."""
    if n_max < 0:
        raise DomainError("n_max must be >= 0")
    signs = np.empty(n_max + 1, dtype=np.int8)
    log_abs = np.empty(n_max + 1, dtype=float)
    init = poly_init(seq, lam)
    for state in propagate(seq, lam, init, max(n_max, 1)):
        if state.n > n_max:
            break
        s, la = state.log_abs_u()
        signs[state.n] = s
        log_abs[state.n] = la
    return PolyTrace(lam, signs, log_abs)


def log_l2_partial_sums(log_abs):
    """log of the running sums of u(n)**2 from log|u(n)| values.

    Uses log-sum-exp accumulation, so the result is exactly nondecreasing
    and survives arbitrarily large magnitudes.  -inf entries (exact zeros)
    contribute nothing.
    """
    log_abs = np.asarray(log_abs, dtype=float)
    return np.logaddexp.accumulate(2.0 * log_abs)


def l2_partial_sums(trace, n_max=None):
    """Running sums of p(n)**2 (log form) for a trace or a state stream.

    Accepts a :class:`PolyTrace` or an iterable of
    :class:`PropagationState`.  Returns an array L with
    L[m] = log(sum over n <= m of u(n)**2).
    """
    if isinstance(trace, PolyTrace):
        log_abs = trace.log_abs
    else:
        log_abs = np.array([s.log_abs_u()[1] for s in trace], dtype=float)
    if n_max is not None:
        if len(log_abs) < n_max + 1:
            raise DomainError("trace shorter than requested length")
        log_abs = log_abs[: n_max + 1]
    return log_l2_partial_sums(log_abs)


def write_trace_csv(path, states):
    """Export a propagation run: columns (n, sign_u, log_abs_u, u_if_representable)."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["n", "sign_u", "log_abs_u", "u_if_representable"])
        for state in states:
            sign, log_abs = state.log_abs_u()
            if sign != 0 and abs(log_abs) < _LOG_HUGE:
                u_repr = "%.17g" % (sign * math.exp(log_abs))
            else:
                u_repr = "0" if sign == 0 else ""
            writer.writerow([state.n, sign, "%.17g" % log_abs, u_repr])
