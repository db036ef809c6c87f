"""Exact algebra over continuous piecewise-linear functions of time.

A Pwl is a continuous function on a closed interval [0, H], stored as a
strictly increasing breakpoint list with one ordinate per breakpoint and
linear interpolation in between.  All operations are exact up to float
arithmetic: results are built from segment geometry, never from sampling.

These functions are the currency of the compression optimizer and of the
solver's cost-to-go tables: tardiness terms are hinges, compression terms
are affine, and minimization over a continuous processing-time choice is a
sliding-window minimum.
"""

from __future__ import annotations

from bisect import bisect_right
from typing import Sequence

MERGE_TOL = 1e-9    # absolute slope difference below which segments merge
X_TOL = 1e-12       # breakpoints closer than this collapse into one
DOMAIN_SLACK = 1e-9  # tolerance when checking arguments against the domain


class DomainError(ValueError):
    """An argument or operand lies outside a function's domain."""


def _clean(points: list[tuple[float, float]]) -> tuple[tuple[float, ...], tuple[float, ...]]:
    """Sort, deduplicate, and collinear-merge a point list."""
    points.sort(key=lambda p: p[0])
    xs: list[float] = []
    ys: list[float] = []
    for x, y in points:
        if xs and x - xs[-1] <= X_TOL:
            continue
        xs.append(x)
        ys.append(y)
    if len(xs) < 2:
        return tuple(xs), tuple(ys)
    # drop interior breakpoints whose removal leaves the function unchanged
    out_x = [xs[0]]
    out_y = [ys[0]]
    for i in range(1, len(xs) - 1):
        s_in = (ys[i] - out_y[-1]) / (xs[i] - out_x[-1])
        s_out = (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i])
        if abs(s_in - s_out) <= MERGE_TOL:
            continue
        out_x.append(xs[i])
        out_y.append(ys[i])
    out_x.append(xs[-1])
    out_y.append(ys[-1])
    return tuple(out_x), tuple(out_y)


class Pwl:
    """Immutable continuous piecewise-linear function on [0, H]."""

    __slots__ = ("xs", "ys")

    def __init__(self, xs: Sequence[float], ys: Sequence[float]):
        if len(xs) != len(ys) or not xs:
            raise ValueError("breakpoints and values must be non-empty and aligned")
        cx, cy = _clean([(0.0 if abs(x) <= DOMAIN_SLACK else float(x), float(y)) for x, y in zip(xs, ys)])
        if abs(cx[0]) > DOMAIN_SLACK:
            raise ValueError(f"domain must start at 0, got {cx[0]}")
        for i in range(1, len(cx)):
            if cx[i] <= cx[i - 1]:
                raise ValueError("breakpoints must be strictly increasing")
        for y in cy:
            if y != y or y in (float("inf"), float("-inf")):
                raise ValueError("values must be finite")
        object.__setattr__(self, "xs", cx)
        object.__setattr__(self, "ys", cy)

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("Pwl is immutable")

    # -- introspection -------------------------------------------------

    @property
    def high(self) -> float:
        """Right end H of the domain [0, H]."""
        return self.xs[-1]

    def __len__(self) -> int:
        return len(self.xs)

    def __repr__(self) -> str:
        pts = ", ".join(f"({x:g},{y:g})" for x, y in zip(self.xs, self.ys))
        return f"Pwl[{pts}]"

    def __eq__(self, other) -> bool:
        return isinstance(other, Pwl) and self.xs == other.xs and self.ys == other.ys

    def __hash__(self) -> int:
        return hash((self.xs, self.ys))

    def slopes(self) -> tuple[float, ...]:
        return tuple(
            (self.ys[i + 1] - self.ys[i]) / (self.xs[i + 1] - self.xs[i])
            for i in range(len(self.xs) - 1)
        )

    def is_convex(self, tol: float = MERGE_TOL) -> bool:
        s = self.slopes()
        return all(s[i + 1] >= s[i] - tol for i in range(len(s) - 1))

    def dump_csv(self) -> str:
        """Debug dump as one ``breakpoint,value`` line per breakpoint."""
        return "\n".join(f"{x!r},{y!r}" for x, y in zip(self.xs, self.ys))

    # -- constructors --------------------------------------------------

    @classmethod
    def constant(cls, value: float, high: float) -> "Pwl":
        if high <= 0:
            return cls._point(0.0, value)
        return cls((0.0, high), (value, value))

    @classmethod
    def zero(cls, high: float) -> "Pwl":
        return cls.constant(0.0, high)

    @classmethod
    def hinge(cls, alpha: float, dd: float, high: float) -> "Pwl":
        """t -> alpha * max(t - dd, 0) on [0, high]."""
        if alpha < 0:
            raise ValueError("hinge rate must be non-negative")
        if dd < 0:
            raise ValueError("hinge knee must be non-negative")
        if alpha == 0.0 or dd >= high:
            return cls.zero(high)
        if dd <= 0.0:
            return cls((0.0, high), (0.0, alpha * high))
        return cls((0.0, dd, high), (0.0, 0.0, alpha * (high - dd)))

    @classmethod
    def _point(cls, x: float, y: float) -> "Pwl":
        # degenerate single-point domain; only reachable via window_min(w == H)
        obj = object.__new__(cls)
        object.__setattr__(obj, "xs", (x,))
        object.__setattr__(obj, "ys", (y,))
        return obj

    # -- evaluation ----------------------------------------------------

    def __call__(self, t: float) -> float:
        return self.value_at(t)

    def value_at(self, t: float) -> float:
        """Linear interpolation; exact at breakpoints.

        Arguments within a few ulps of a breakpoint snap to it: interpolating
        on a near-vertical segment at that distance would amplify rounding
        noise of the argument into the value.
        """
        if t < -DOMAIN_SLACK or t > self.high + DOMAIN_SLACK:
            raise DomainError(f"argument {t} outside domain [0, {self.high}]")
        t = min(max(t, 0.0), self.high)
        if len(self.xs) == 1:
            return self.ys[0]
        i = bisect_right(self.xs, t) - 1
        if i >= len(self.xs) - 1:
            return self.ys[-1]
        x0, x1 = self.xs[i], self.xs[i + 1]
        snap = min(1e-13 * max(abs(t), 1.0), 0.4 * X_TOL)
        if t - x0 <= snap:
            return self.ys[i]
        if x1 - t <= snap:
            return self.ys[i + 1]
        y0, y1 = self.ys[i], self.ys[i + 1]
        return y0 + (y1 - y0) * (t - x0) / (x1 - x0)

    # -- arithmetic ----------------------------------------------------

    def _check_same_domain(self, other: "Pwl") -> None:
        if abs(self.high - other.high) > DOMAIN_SLACK:
            raise DomainError(f"domain mismatch: [0, {self.high}] vs [0, {other.high}]")

    def add(self, other: "Pwl") -> "Pwl":
        self._check_same_domain(other)
        grid = sorted(set(self.xs) | set(other.xs))
        pts = [(x, self.value_at(x) + other.value_at(x)) for x in grid]
        return Pwl([p[0] for p in pts], [p[1] for p in pts])

    def __add__(self, other: "Pwl") -> "Pwl":
        return self.add(other)

    def add_affine(self, slope: float, intercept: float) -> "Pwl":
        """Pointwise f(t) + slope*t + intercept."""
        return Pwl(self.xs, tuple(y + slope * x + intercept for x, y in zip(self.xs, self.ys)))

    def shift(self, delta: float, high: float | None = None) -> "Pwl":
        """g(t) = f(t + delta), clamped to the nearest endpoint value outside [0, H].

        ``high`` overrides the output domain end (defaults to this function's).
        """
        out_high = self.high if high is None else high
        cand = {0.0, out_high}
        for x in self.xs:
            t = x - delta
            if 0.0 < t < out_high:
                cand.add(t)
        for t in (-delta, self.high - delta):  # clamp onset points
            if 0.0 < t < out_high:
                cand.add(t)
        grid = sorted(cand)
        pts = [(t, self.value_at(min(max(t + delta, 0.0), self.high))) for t in grid]
        return Pwl([p[0] for p in pts], [p[1] for p in pts])

    def pointwise_min(self, other: "Pwl") -> "Pwl":
        """Pointwise minimum, with crossing points inserted as breakpoints."""
        self._check_same_domain(other)
        grid = sorted(set(self.xs) | set(other.xs))
        pts: list[tuple[float, float]] = []
        prev_x = None
        prev_d = None
        for x in grid:
            fv = self.value_at(x)
            gv = other.value_at(min(x, other.high))
            d = fv - gv
            if prev_x is not None and ((prev_d > 0 > d) or (prev_d < 0 < d)):
                cx = prev_x + (x - prev_x) * prev_d / (prev_d - d)
                if prev_x + X_TOL < cx < x - X_TOL:
                    pts.append((cx, self.value_at(cx)))
            pts.append((x, min(fv, gv)))
            prev_x, prev_d = x, d
        return Pwl([p[0] for p in pts], [p[1] for p in pts])

    # -- window minimization -------------------------------------------

    def window_min(self, w: float) -> "Pwl":
        """g(x) = min of f over [x, x + w], on the domain [0, H - w].

        Computed exactly from segments: between consecutive sweep events the
        window minimum is the lower envelope of the two window-edge values
        and the best interior breakpoint, all affine in x.
        """
        if w < -DOMAIN_SLACK:
            raise DomainError("window width must be non-negative")
        w = max(w, 0.0)
        if w > self.high + DOMAIN_SLACK:
            raise DomainError(f"window width {w} exceeds domain end {self.high}")
        if w <= X_TOL:
            return Pwl(self.xs, self.ys)
        out_high = self.high - w
        if out_high <= X_TOL:
            return Pwl._point(0.0, min(self.ys))
        events = {0.0, out_high}
        for b in self.xs:
            for e in (b, b - w):
                if 0.0 < e < out_high:
                    events.add(e)
        grid = sorted(events)
        pts: list[tuple[float, float]] = []
        for e1, e2 in zip(grid, grid[1:]):
            pts.extend(self._window_piece(e1, e2, w))
        return Pwl([p[0] for p in pts], [p[1] for p in pts])

    def _window_piece(self, e1: float, e2: float, w: float) -> list[tuple[float, float]]:
        """Lower envelope of the window minimum on one event-free interval.

        Lines are anchored at e1 (slope, value there): steep segments on tiny
        intervals far from the origin would lose precision in slope-intercept
        form.
        """
        width = e2 - e1
        # affine pieces: left edge f(x), right edge f(x+w)
        lines = []
        for y1, y2 in (
            (self.value_at(e1), self.value_at(e2)),
            (self.value_at(e1 + w), self.value_at(e2 + w)),
        ):
            lines.append(((y2 - y1) / width, y1))
        # best breakpoint strictly covered by every window in the interval
        inner = [y for x, y in zip(self.xs, self.ys) if e2 - X_TOL <= x <= e1 + w + X_TOL]
        if inner:
            lines.append((0.0, min(inner)))
        offsets = {0.0, width}
        for i in range(len(lines)):
            for j in range(i + 1, len(lines)):
                a1, b1 = lines[i]
                a2, b2 = lines[j]
                if abs(a1 - a2) > MERGE_TOL:
                    dx = (b2 - b1) / (a1 - a2)
                    if X_TOL < dx < width - X_TOL:
                        offsets.add(dx)
        return [(e1 + dx, min(a * dx + b for a, b in lines)) for dx in sorted(offsets)]

    def min_over(self, lo: float, hi: float) -> float:
        """Exact minimum of f over the closed interval [lo, hi]."""
        val, _, _ = self._interval_argmin(lo, hi)
        return val

    def argmin_in_window(self, x: float, w: float) -> float:
        """Smallest minimizer of f over [x, x + w]."""
        _, lowest, _ = self._interval_argmin(x, x + w)
        return lowest

    def argmin_over(self, lo: float, hi: float, prefer: str = "lowest") -> float:
        """Minimizer of f over [lo, hi]; ``prefer`` picks among exact ties."""
        _, lowest, highest = self._interval_argmin(lo, hi)
        if prefer == "lowest":
            return lowest
        if prefer == "highest":
            return highest
        raise ValueError(f"unknown preference {prefer!r}")

    def _interval_argmin(self, lo: float, hi: float) -> tuple[float, float, float]:
        if lo < -DOMAIN_SLACK or hi > self.high + DOMAIN_SLACK or hi < lo - DOMAIN_SLACK:
            raise DomainError(f"window [{lo}, {hi}] not inside [0, {self.high}]")
        lo = min(max(lo, 0.0), self.high)
        hi = min(max(hi, lo), self.high)
        cand = [lo] + [x for x in self.xs if lo < x < hi] + ([hi] if hi > lo else [])
        vals = [self.value_at(c) for c in cand]
        best = min(vals)
        ties = [c for c, v in zip(cand, vals) if v <= best + MERGE_TOL]
        return best, ties[0], ties[-1]
