"""Adaptive Gauss-Legendre integration on subintervals of [0, 1].

Panels use a fixed 16-point rule with the 8-point rule as error reference.
The worst panel (largest error estimate) is bisected until the summed
estimate meets the requested absolute tolerance; 40 bisection levels per
panel convert silent stalls (e.g. a non-integrable singularity) into a
MaxDepthExceeded error.

Known interior breakpoints split the range up front so that piecewise-smooth
integrands are integrated panel-aligned.  An integrable inverse-square-root
singularity at the left endpoint is removed exactly by the substitution
s = a + (b-a)*tau**2 on the leftmost segment.

Integrands are called with numpy arrays of sample points and must return
arrays of the same shape.
"""

import heapq
from dataclasses import dataclass, field

import numpy as np

from .errors import MaxDepthExceeded, NonFiniteIntegrand

_NODES8, _WEIGHTS8 = np.polynomial.legendre.leggauss(8)
_NODES16, _WEIGHTS16 = np.polynomial.legendre.leggauss(16)

MAX_DEPTH = 40


@dataclass
class IntegrandSpec:
    """An integrand together with what the quadrature needs to know about it.

    breakpoints outside the integration range are ignored at integrate()
    time; duplicates are merged.  tol is the absolute error target for the
    whole integral.
    """

    integrand: callable
    breakpoints: tuple = field(default_factory=tuple)
    singular_left: bool = False
    tol: float = 1e-10

    def __post_init__(self):
        if self.tol <= 0:
            raise ValueError(f"tol must be > 0, got {self.tol}")


def _panel(fn, lo, hi):
    """Return (I16, err, ok) for one panel; ok=False flags non-finite samples."""
    mid = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    pts = np.concatenate((mid + half * _NODES16, mid + half * _NODES8))
    vals = fn(pts)
    if not np.all(np.isfinite(vals)):
        return 0.0, 0.0, False
    i16 = half * float(_WEIGHTS16 @ vals[:16])
    i8 = half * float(_WEIGHTS8 @ vals[16:])
    return i16, abs(i16 - i8), True


def _segments(spec: IntegrandSpec, a: float, b: float):
    """Split [a, b] at interior breakpoints; transform the leftmost segment
    when a left-endpoint singularity is declared."""
    pts = sorted({float(x) for x in spec.breakpoints if a < x < b})
    # drop breakpoints indistinguishable from a neighbour or an endpoint
    edges = [a]
    for x in pts:
        if x - edges[-1] > 1e-14 and b - x > 1e-14:
            edges.append(x)
    edges.append(b)

    fn = spec.integrand
    segs = []
    for i, (lo, hi) in enumerate(zip(edges[:-1], edges[1:])):
        if i == 0 and spec.singular_left:
            width = hi - lo

            def transformed(tau, _lo=lo, _w=width):
                return fn(_lo + _w * tau * tau) * 2.0 * _w * tau

            segs.append((transformed, 0.0, 1.0))
        else:
            segs.append((fn, lo, hi))
    return segs


def integrate(spec: IntegrandSpec, a: float, b: float) -> float:
    """Integrate spec.integrand over [a, b] to absolute tolerance spec.tol.

    Raises MaxDepthExceeded when the panel budget runs out before the
    tolerance is met (the usual symptom of an undeclared or non-integrable
    singularity) and NonFiniteIntegrand when a sample away from the declared
    singular endpoint is NaN or infinite.
    """
    if not 0.0 <= a <= b <= 1.0:
        raise ValueError(f"need 0 <= a <= b <= 1, got a={a}, b={b}")
    if b - a <= 1e-15:
        return 0.0

    heap = []
    seq = 0
    total = 0.0
    total_err = 0.0
    for fn, lo, hi in _segments(spec, a, b):
        val, err, ok = _panel(fn, lo, hi)
        if not ok:
            raise NonFiniteIntegrand(
                f"integrand not finite on [{lo}, {hi}]")
        heapq.heappush(heap, (-err, seq, lo, hi, val, 0, fn))
        seq += 1
        total += val
        total_err += err

    while total_err > spec.tol:
        neg_err, _, lo, hi, val, depth, fn = heapq.heappop(heap)
        if depth >= MAX_DEPTH:
            raise MaxDepthExceeded(
                f"error estimate {total_err:.3e} still above tol {spec.tol:.3e} "
                f"after {MAX_DEPTH} bisection levels near [{lo}, {hi}]")
        total -= val
        total_err += neg_err  # neg_err = -err
        mid = 0.5 * (lo + hi)
        for c, d in ((lo, mid), (mid, hi)):
            v, e, ok = _panel(fn, c, d)
            if not ok:
                raise NonFiniteIntegrand(
                    f"integrand not finite on [{c}, {d}]")
            heapq.heappush(heap, (-e, seq, c, d, v, depth + 1, fn))
            seq += 1
            total += v
            total_err += e

    return total
