"""Derivative-free scalar optimization: golden-section search with a
preliminary bracket scan and an optional curvature polish.

Plain golden-section localizes a smooth minimum only to about
sqrt(machine eps) relative (function comparisons go below rounding noise
before the bracket does), so callers that need tighter argmin accuracy
enable the Newton polish based on central differences.
"""

import math

from .errors import NumericalError

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_section_min(f, a, b, rel_tol=1e-10, max_iter=200):
    """Shrink [a, b] around the minimum of f until (b-a) <= rel_tol*scale.

    Assumes f is unimodal on [a, b]. Returns (x, f(x), iterations).
    """
    scale = max(abs(a), abs(b), 1e-300)
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    iterations = 0
    while (b - a) > rel_tol * scale and iterations < max_iter:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
        iterations += 1
    x = 0.5 * (a + b)
    return x, f(x), iterations


def newton_polish(f, x, lo, hi, step, rounds=2):
    """Refine a near-minimum x with Newton steps on central differences.

    ``step`` should sit well above the comparison noise floor (~1e-5 of the
    interval works for smooth objectives). Steps that leave [lo, hi] or hit
    non-convex curvature are discarded.
    """
    for _ in range(rounds):
        x_lo, x_hi = x - step, x + step
        if x_lo <= lo or x_hi >= hi:
            break
        f_lo, f_mid, f_hi = f(x_lo), f(x), f(x_hi)
        d1 = (f_hi - f_lo) / (2.0 * step)
        d2 = (f_hi - 2.0 * f_mid + f_lo) / (step * step)
        if not math.isfinite(d1) or not math.isfinite(d2) or d2 <= 0.0:
            break
        candidate = x - d1 / d2
        if not (lo < candidate < hi) or abs(candidate - x) > 4.0 * step:
            break
        x = candidate
        step *= 1e-2
    return x


def bracket_minimum(f, a, b, samples=64):
    """Scan [a, b] on a uniform grid and bracket the smallest finite value.

    Raises NumericalError if the sampled values are not unimodal (more than
    one robust descent/ascent sign change) or contain no finite point.
    Returns (left, right, x_best, f_best).
    """
    xs = [a + (b - a) * i / (samples - 1) for i in range(samples)]
    fs = [f(x) for x in xs]
    finite = [i for i, v in enumerate(fs) if math.isfinite(v)]
    if not finite:
        raise NumericalError("objective has no finite values on the search interval")
    best = min(finite, key=lambda i: fs[i])

    # Unimodality check on the finite segment, ignoring sub-noise wiggles.
    lo, hi = finite[0], finite[-1]
    span = max(abs(v) for v in fs if math.isfinite(v))
    noise = 1e-12 * max(span, 1e-300)
    changes = 0
    prev = 0
    for i in range(lo, hi):
        if not (math.isfinite(fs[i]) and math.isfinite(fs[i + 1])):
            continue
        diff = fs[i + 1] - fs[i]
        sign = 0 if abs(diff) <= noise else (1 if diff > 0 else -1)
        if sign != 0:
            if prev == -1 and sign == 1:
                changes += 1
            elif prev == 1 and sign == -1:
                # ascent followed by descent: a second valley exists
                changes += 2
            prev = sign
    if changes > 1:
        raise NumericalError(
            "objective is not unimodal on the search interval (bracketing failure)")

    left = xs[best - 1] if best > 0 else xs[best]
    right = xs[best + 1] if best < samples - 1 else xs[best]
    return left, right, xs[best], fs[best]
