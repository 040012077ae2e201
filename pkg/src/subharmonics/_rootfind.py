"""Safeguarded scalar root refinement inside a known sign-change bracket."""

from __future__ import annotations


def bracket_root(f, a, b, fa, fb, *, xtol, ftol, max_iter=128):
    """Refine a root of ``f`` inside ``[a, b]`` where ``fa`` and ``fb`` differ in sign.

    Secant steps are taken while they fall strictly inside the bracket
    and keep shrinking it; otherwise the interval is bisected, so the
    bisection worst case bounds the work.  Returns ``(x, f(x))`` for the
    evaluation with the smallest ``|f|`` seen, stopping early once
    ``|f| <= ftol`` or the bracket is narrower than ``xtol``.
    """
    if fa == 0.0:
        return a, fa
    if fb == 0.0:
        return b, fb
    if (fa > 0.0) == (fb > 0.0):
        raise ValueError("bracket endpoints must have opposite signs")

    best_x, best_f = (a, fa) if abs(fa) < abs(fb) else (b, fb)
    if abs(best_f) <= ftol:
        return best_x, best_f

    prev_width = abs(b - a)
    force_bisect = False
    for _ in range(max_iter):
        width = abs(b - a)
        if width <= xtol:
            break
        mid = 0.5 * (a + b)
        x = mid
        if not force_bisect and fb != fa:
            secant = b - fb * (b - a) / (fb - fa)
            lo, hi = (a, b) if a < b else (b, a)
            if lo < secant < hi:
                x = secant
        if x == a or x == b:  # no representable progress from the endpoints
            x = mid
            if x == a or x == b:
                break
        fx = f(x)
        if abs(fx) < abs(best_f):
            best_x, best_f = x, fx
        if abs(fx) <= ftol:
            return x, fx
        if fx == 0.0:
            return x, fx
        if (fx > 0.0) == (fa > 0.0):
            a, fa = x, fx
        else:
            b, fb = x, fx
        # demand geometric shrink from the secant; bisect when it stalls
        force_bisect = abs(b - a) > 0.5 * prev_width
        prev_width = width
    return best_x, best_f
