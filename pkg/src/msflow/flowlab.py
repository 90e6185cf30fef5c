"""Numerical checks of the explicit local vector-field models.

Charts use unit-circumference circles throughout.  The torus-destruction
model lives on S^1 x [-1, 1] x S^1 with coordinates (t, x, z); its two
periodic orbits sit on the invariant torus {x = 0} along the circles
b = lambda*z - t = 1/4 and 3/4.  The b = 3/4 circle repels within the
torus with one-period factor exp(2*pi*(lambda^2 + 1)), far too stiff to
close up under forward float integration, so it is traced backward in
time (where it attracts); Floquet signs are always measured forward.

Curves on the flat unit torus are stored as lifted polylines whose
endpoint difference is the integer homology class.  Intersection tests
translate candidate segments into a common fundamental domain, so they
are exact up to float arithmetic, not up to wrapping artifacts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import (
    DegenerateOverlap,
    NonFinite,
    NothingToRepair,
    OrbitNotClosed,
    RepairFailed,
    VanishingField,
    ZeroLambda,
)

DT_DEFAULT = 1e-3
CLOSURE_TOL = 1e-6
CROSS_TOL = 1e-3
BOUNDARY_TOL = 1e-12


def smoothstep(u: "np.ndarray | float") -> "np.ndarray | float":
    """Cubic ramp 3u^2 - 2u^3 clamped to [0, 1]."""
    u = np.clip(u, 0.0, 1.0)
    return u * u * (3.0 - 2.0 * u)


def default_bump(x: "np.ndarray | float") -> "np.ndarray | float":
    """sin^2(pi*x/2): vanishes at 0, equals 1 at x = +-1, smooth and even."""
    s = np.sin(0.5 * np.pi * x)
    return s * s


# ---------------------------------------------------------------------------
# Chart fields

@dataclass(frozen=True, eq=False)
class TorusChartField:
    """The torus-destruction model field on (t, x, z).

    F = f*(lam, 0, 1) + (0, -x, 0) + g*(-1, 0, lam), where f interpolates
    between 1 on {x = 0} and (lam+1)/(lam^2+1) at x = +-1, and g between
    cos(2*pi*(lam*z - t)) and (lam-1)/(lam^2+1).  At x = +-1 the field is
    (1, -x, 1) exactly.  `g_shift` adds a constant to g; it exists to test
    the failure path where the invariant circles disappear.
    """

    lam: int
    bump: Callable = default_bump
    g_shift: float = 0.0

    dim = 3
    circle_mask = (True, False, True)

    def __post_init__(self) -> None:
        if not isinstance(self.lam, int) or isinstance(self.lam, bool) or self.lam == 0:
            raise ZeroLambda("the torus-destruction model needs a nonzero integer coefficient")

    def profiles(self, points: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        t, x, z = points[..., 0], points[..., 1], points[..., 2]
        lam = self.lam
        rho = self.bump(x)
        f = (1.0 - rho) + rho * (lam + 1) / (lam * lam + 1)
        g = (1.0 - rho) * np.cos(2.0 * np.pi * (lam * z - t)) + rho * (lam - 1) / (lam * lam + 1)
        return f, g + self.g_shift

    def __call__(self, points: np.ndarray) -> np.ndarray:
        points = np.asarray(points, dtype=float)
        f, g = self.profiles(points)
        lam = self.lam
        out = np.empty_like(points)
        out[..., 0] = f * lam - g
        out[..., 1] = -points[..., 1]
        out[..., 2] = f + g * lam
        return out


@dataclass(frozen=True, eq=False)
class RoundHandleField:
    """dt - x dx (attracting) or dt + x dx (repelling) on S^1 x [-1, 1]."""

    stability: str = "attracting"

    dim = 2
    circle_mask = (True, False)

    def __post_init__(self) -> None:
        if self.stability not in ("attracting", "repelling"):
            raise ValueError(f"unknown stability {self.stability!r}")

    def __call__(self, points: np.ndarray) -> np.ndarray:
        points = np.asarray(points, dtype=float)
        out = np.empty_like(points)
        out[..., 0] = 1.0
        sign = -1.0 if self.stability == "attracting" else 1.0
        out[..., 1] = sign * points[..., 1]
        return out


def round_handle_field(stability: str = "attracting") -> RoundHandleField:
    return RoundHandleField(stability)


def torus_chart_field(lam: int, bump: Callable = default_bump) -> TorusChartField:
    return TorusChartField(lam, bump)


class _Reversed:
    """Time reversal of a chart field; same chart, negated values."""

    def __init__(self, field) -> None:
        self.field = field
        self.dim = field.dim
        self.circle_mask = field.circle_mask

    def __call__(self, points: np.ndarray) -> np.ndarray:
        return -self.field(points)


# ---------------------------------------------------------------------------
# Integration

@dataclass(frozen=True, eq=False)
class Trajectory:
    """Sampled integral curve: times[i] = i*step, points[i] the chart point
    (circle coordinates wrapped into [0, 1))."""

    times: np.ndarray
    points: np.ndarray
    step: float

    @property
    def start(self) -> np.ndarray:
        return self.points[0]

    @property
    def end(self) -> np.ndarray:
        return self.points[-1]


def _wrap(points: np.ndarray, mask: np.ndarray) -> np.ndarray:
    out = np.array(points, dtype=float)
    out[..., mask] %= 1.0
    return out


def wrapped_delta(a: np.ndarray, b: np.ndarray, circle_mask) -> np.ndarray:
    """Componentwise a - b with circle coordinates reduced to [-1/2, 1/2)."""
    d = np.asarray(a, dtype=float) - np.asarray(b, dtype=float)
    mask = np.asarray(circle_mask)
    d[..., mask] = (d[..., mask] + 0.5) % 1.0 - 0.5
    return d


def wrapped_distance(a: np.ndarray, b: np.ndarray, circle_mask) -> float:
    return float(np.max(np.abs(wrapped_delta(a, b, circle_mask))))


def rk4_integrate(field, x0, dt: float, T: float) -> Trajectory:
    """Classical Runge-Kutta 4 with circle coordinates wrapped each step.

    The step count is round(T / dt), so T is honored to the nearest step.
    Field evaluations are not wrapped mid-step; all chart fields here are
    periodic in their circle coordinates, which keeps stages smooth across
    the seam.
    """
    if not (dt > 0 and T > 0 and dt <= T):
        raise ValueError("need 0 < dt <= T")
    mask = np.asarray(field.circle_mask)
    x = np.asarray(x0, dtype=float)
    if x.shape[-1] != field.dim:
        raise ValueError(f"points of dimension {x.shape[-1]} in a {field.dim}-dimensional chart")
    x = _wrap(x, mask)
    n = max(1, int(round(T / dt)))
    points = np.empty((n + 1,) + x.shape, dtype=float)
    points[0] = x
    for i in range(n):
        k1 = field(x)
        k2 = field(x + 0.5 * dt * k1)
        k3 = field(x + 0.5 * dt * k2)
        k4 = field(x + dt * k3)
        step = (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if not np.isfinite(step).all():
            raise NonFinite(f"field evaluation produced a non-finite value near step {i}")
        x = _wrap(x + step, mask)
        points[i + 1] = x
    return Trajectory(times=np.arange(n + 1) * dt, points=points, step=dt)


# ---------------------------------------------------------------------------
# Orbit detection for the torus-destruction model

def detect_torus_orbits(field: TorusChartField, dt: float = DT_DEFAULT,
                        tol: float = CLOSURE_TOL):
    """Locate the two periodic orbits of the model and their Floquet signs.

    Returns [(trajectory, (sign_within_torus, sign_transverse)), ...] for the
    circles b = 1/4 and b = 3/4, in that order.  Signs are -1 (contracting)
    or +1 (expanding), measured by forward integration of perturbed starts.
    The b = 3/4 trajectory itself is integrated backward; see the module
    docstring.
    """
    results = []
    eps = 1e-4
    for b_star, forward in ((0.25, True), (0.75, False)):
        x0 = np.array([(-b_star) % 1.0, 0.0, 0.0])
        traj = rk4_integrate(field if forward else _Reversed(field), x0, dt, 1.0)
        err = wrapped_distance(traj.end, traj.start, field.circle_mask)
        if err > tol:
            raise OrbitNotClosed(
                f"orbit at b={b_star} failed to close: error {err:.3e} exceeds {tol:.1e}")

        # b = lam*z - t, so shifting t by -eps shifts b by +eps
        perturbed_b = rk4_integrate(field, x0 + np.array([-eps, 0.0, 0.0]), dt, 1.0)
        b_end = (field.lam * perturbed_b.end[2] - perturbed_b.end[0]) % 1.0
        after_b = abs((b_end - b_star + 0.5) % 1.0 - 0.5)
        sign_b = 1 if after_b > eps else -1

        perturbed_x = rk4_integrate(field, x0 + np.array([0.0, eps, 0.0]), dt, 1.0)
        sign_x = 1 if abs(perturbed_x.end[1]) > eps else -1
        results.append((traj, (sign_b, sign_x)))
    return results


# ---------------------------------------------------------------------------
# Curves on the flat torus

@dataclass(frozen=True, eq=False)
class TorusCurve:
    """Closed curve on the unit torus, stored as a lifted polyline.

    `points` has shape (N+1, 2); the difference points[-1] - points[0] must
    be (within 1e-9 of) an integer vector, the curve's homology class.
    """

    points: np.ndarray

    def __post_init__(self) -> None:
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] < 2:
            raise ValueError("a curve needs an (N+1, 2) array of lifted points")
        gap = pts[-1] - pts[0]
        if np.max(np.abs(gap - np.round(gap))) > 1e-9:
            raise OrbitNotClosed(f"curve endpoints differ by non-integer vector {gap}")
        object.__setattr__(self, "points", pts)

    @property
    def homology_class(self) -> tuple[int, int]:
        gap = self.points[-1] - self.points[0]
        return int(round(gap[0])), int(round(gap[1]))

    @staticmethod
    def line(p: int, q: int, offset: float = 0.0, n: int = 512) -> "TorusCurve":
        """The (p, q)-line, displaced by `offset` along its unit normal."""
        if p == 0 and q == 0:
            raise ValueError("a line needs a nonzero direction class")
        if n < 512:
            raise ValueError("sample polylines with at least 512 points")
        s = np.linspace(0.0, 1.0, n + 1)
        norm = math.hypot(p, q)
        normal = np.array([-q / norm, p / norm])
        return TorusCurve(np.outer(s, [p, q]) + offset * normal)

    @staticmethod
    def from_function(fn: Callable[[np.ndarray], np.ndarray], n: int = 4096) -> "TorusCurve":
        """Sample fn over s in [0, 1]; fn returns lifted points of shape (len(s), 2)."""
        if n < 512:
            raise ValueError("sample polylines with at least 512 points")
        s = np.linspace(0.0, 1.0, n + 1)
        return TorusCurve(np.asarray(fn(s), dtype=float))

    def translate(self, vec) -> "TorusCurve":
        return TorusCurve(self.points + np.asarray(vec, dtype=float))


def _segment_data(curve: TorusCurve) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    # wrapped segment starts, raw deltas, wrapped midpoints
    starts = curve.points[:-1] % 1.0
    deltas = curve.points[1:] - curve.points[:-1]
    mids = (starts + 0.5 * deltas) % 1.0
    return starts, deltas, mids


def _cross(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a[..., 0] * b[..., 1] - a[..., 1] * b[..., 0]


def curve_intersections(c1: TorusCurve, c2: TorusCurve, tol: float = CROSS_TOL):
    """All intersection points of two torus curves with transversality flags.

    Each reported point is in [0, 1)^2; the flag is True iff the sine of the
    crossing angle exceeds `tol`.  A pair of collinear overlapping segments
    raises DegenerateOverlap since no crossing angle exists there.
    """
    s1, d1, m1 = _segment_data(c1)
    s2, d2, m2 = _segment_data(c2)
    cells = 64
    buckets: dict[tuple[int, int], list[int]] = {}
    for j, mid in enumerate(m2):
        buckets.setdefault((int(mid[0] * cells) % cells, int(mid[1] * cells) % cells), []).append(j)

    eps = 1e-9
    found: list[tuple[float, float, float]] = []  # (x, y, |unit cross|)
    for i in range(len(s1)):
        cx, cy = int(m1[i][0] * cells) % cells, int(m1[i][1] * cells) % cells
        candidates: list[int] = []
        for ox in (-1, 0, 1):
            for oy in (-1, 0, 1):
                candidates += buckets.get(((cx + ox) % cells, (cy + oy) % cells), [])
        if not candidates:
            continue
        p, r = s1[i], d1[i]
        for j in candidates:
            # integer translate bringing segment j next to segment i
            q, w = s2[j] + np.round(m1[i] - m2[j]), d2[j]
            rw = _cross(r, w)
            qp = q - p
            scale = np.linalg.norm(r) * np.linalg.norm(w)
            if scale == 0.0:
                continue
            if abs(rw) <= 1e-12 * scale:
                # parallel; collinear overlap of positive length is degenerate
                if abs(_cross(qp, r)) <= 1e-9 * max(np.linalg.norm(r), 1.0):
                    rr = float(r @ r)
                    t0 = float(qp @ r) / rr
                    t1 = t0 + float(w @ r) / rr
                    lo, hi = min(t0, t1), max(t0, t1)
                    if min(hi, 1.0) - max(lo, 0.0) > 1e-9:
                        raise DegenerateOverlap("curves share a positive-length segment")
                continue
            s = _cross(qp, w) / rw
            u = _cross(qp, r) / rw
            if -eps <= s <= 1 + eps and -eps <= u <= 1 + eps:
                pt = (p + s * r) % 1.0
                found.append((float(pt[0]), float(pt[1]), abs(rw) / scale))

    merged: list[list[float]] = []
    for x, y, cr in sorted(found):
        for entry in merged:
            dx = (x - entry[0] + 0.5) % 1.0 - 0.5
            dy = (y - entry[1] + 0.5) % 1.0 - 0.5
            if abs(dx) <= 1e-7 and abs(dy) <= 1e-7:
                entry[2] = min(entry[2], cr)
                break
        else:
            merged.append([x, y, cr])
    merged.sort(key=lambda e: (e[0], e[1]))
    return [(np.array([x, y]), cr > tol) for x, y, cr in merged]


# ---------------------------------------------------------------------------
# Transversality repair (curve-level gluing adjustment)

class TranslationIsotopy:
    """phi_t(p) = p + ramp(t) * displacement, identity for t < eps and
    constant for t > 1 - eps."""

    def __init__(self, displacement, eps: float = 0.1) -> None:
        self.displacement = np.asarray(displacement, dtype=float)
        self.eps = eps

    def ramp(self, t):
        return smoothstep((np.asarray(t, dtype=float) - self.eps) / (1.0 - 2.0 * self.eps))

    def __call__(self, t, points):
        ramp = np.asarray(self.ramp(t), dtype=float)
        if ramp.ndim:
            ramp = ramp[..., None]
        return np.asarray(points, dtype=float) + ramp * self.displacement

    def velocity(self, t):
        # derivative of the clamped cubic ramp, zero outside (eps, 1-eps)
        u = (np.asarray(t, dtype=float) - self.eps) / (1.0 - 2.0 * self.eps)
        inside = (u > 0.0) & (u < 1.0)
        du = np.where(inside, 6.0 * u * (1.0 - u), 0.0) / (1.0 - 2.0 * self.eps)
        return du


class SuspensionField:
    """d/dt + velocity of the isotopy, on [0, 1] x T^2 with coordinates
    (t, a, b)."""

    dim = 3
    circle_mask = (False, True, True)

    def __init__(self, isotopy: TranslationIsotopy) -> None:
        self.isotopy = isotopy

    def __call__(self, points: np.ndarray) -> np.ndarray:
        points = np.asarray(points, dtype=float)
        out = np.empty_like(points)
        out[..., 0] = 1.0
        du = self.isotopy.velocity(points[..., 0])
        out[..., 1] = du * self.isotopy.displacement[0]
        out[..., 2] = du * self.isotopy.displacement[1]
        return out


_REPAIR_CANDIDATES = (-0.05, 0.05, -0.1, 0.1, -0.15, 0.15, -0.2, 0.2)


def repair_transversality(l1: TorusCurve, l2: TorusCurve, tol: float = CROSS_TOL):
    """Isotope `l1` until every intersection with `l2` is transverse.

    Tries normal displacements of growing size; a candidate is accepted when
    all intersections are transverse and their count has the parity of the
    homological intersection number |p1*q2 - q1*p2|.  Returns the isotopy and
    a JSON-ready report; the isotopy's suspension field is integrated as a
    cross-check that its time-1 flow moves `l1` where claimed.
    """
    before = curve_intersections(l1, l2, tol)
    bad = sum(1 for _, transverse in before if not transverse)
    if bad == 0:
        raise NothingToRepair("every intersection is already transverse")

    p1, q1 = l1.homology_class
    p2, q2 = l2.homology_class
    parity = abs(p1 * q2 - q1 * p2) % 2
    norm = math.hypot(p1, q1)
    normal = np.array([-q1 / norm, p1 / norm])

    chosen = None
    after = None
    for d in _REPAIR_CANDIDATES:
        try:
            candidate = curve_intersections(l1.translate(d * normal), l2, tol)
        except DegenerateOverlap:
            continue
        if all(t for _, t in candidate) and len(candidate) % 2 == parity:
            chosen, after = d, candidate
            break
    if chosen is None:
        raise RepairFailed("no candidate displacement made all intersections transverse")

    isotopy = TranslationIsotopy(chosen * normal)
    starts = np.concatenate([np.zeros((len(l1.points), 1)), l1.points % 1.0], axis=1)
    flowed = rk4_integrate(SuspensionField(isotopy), starts, DT_DEFAULT, 1.0)
    target = isotopy(1.0, l1.points % 1.0)
    suspension_error = float(np.max(np.abs(
        wrapped_delta(flowed.end[:, 1:], target, (True, True)))))

    report = {
        "model": "glue-demo",
        "displacement": [float(v) for v in isotopy.displacement],
        "intersections_before": {"count": len(before), "non_transverse": bad},
        "intersections_after": {"count": len(after), "non_transverse": 0},
        "parity": {"target": parity, "after": len(after) % 2},
        "suspension_error": suspension_error,
        "pass": bool(suspension_error < CLOSURE_TOL),
    }
    return isotopy, report


# ---------------------------------------------------------------------------
# Collar reference field

@dataclass(frozen=True, eq=False)
class CollarField:
    """(g(r), f(r), 0) on [0, 1] x T^2 with coordinates (r, fiber, base)."""

    f_profile: Callable
    g_profile: Callable

    dim = 3
    circle_mask = (False, True, True)

    def __call__(self, points: np.ndarray) -> np.ndarray:
        points = np.asarray(points, dtype=float)
        r = points[..., 0]
        out = np.empty_like(points)
        out[..., 0] = self.g_profile(r)
        out[..., 1] = self.f_profile(r)
        out[..., 2] = 0.0
        return out


def collar_reference_field(f_profile: Callable | None = None,
                           g_profile: Callable | None = None,
                           grid_side: int = 64):
    """Build and check the collar interpolation field.

    f must ramp up from 0 to 1 and g down from 1 to 0 (monotonically); the
    field is (g, f, 0), which must never vanish on a grid_side^3 sample grid
    of the collar and equals (1, 0, 0) at the boundary r = 0.  Returns
    (field, report).
    """
    f = f_profile if f_profile is not None else (lambda r: smoothstep(r))
    g = g_profile if g_profile is not None else (lambda r: 1.0 - smoothstep(r))
    fine = np.linspace(0.0, 1.0, 1025)
    fv = np.asarray(f(fine), dtype=float)
    gv = np.asarray(g(fine), dtype=float)
    if abs(fv[0]) > 1e-12 or abs(fv[-1] - 1.0) > 1e-12:
        raise ValueError("f must satisfy f(0) = 0 and f(1) = 1")
    if abs(gv[0] - 1.0) > 1e-12 or abs(gv[-1]) > 1e-12:
        raise ValueError("g must satisfy g(0) = 1 and g(1) = 0")
    if np.any(np.diff(fv) < -1e-12):
        raise ValueError("f must be non-decreasing")
    if np.any(np.diff(gv) > 1e-12):
        raise ValueError("g must be non-increasing")

    field = CollarField(f, g)
    axis = np.linspace(0.0, 1.0, grid_side)
    r, th1, th2 = np.meshgrid(axis, axis, axis, indexing="ij")
    values = field(np.stack([r, th1, th2], axis=-1))
    norms = np.max(np.abs(values), axis=-1)
    min_norm = float(norms.min())
    if min_norm <= 0.0:
        where = np.unravel_index(int(norms.argmin()), norms.shape)
        raise VanishingField(f"field vanishes near r = {axis[where[0]]:.4f}")
    at_zero = field(np.array([0.0, 0.0, 0.0]))
    report = {
        "model": "collar",
        "min_norm": min_norm,
        "boundary_field": [float(v) for v in at_zero],
        "pass": bool(min_norm > 0.0 and np.allclose(at_zero, [1.0, 0.0, 0.0], atol=1e-12)),
    }
    return field, report


# ---------------------------------------------------------------------------
# Verification reports

def boundary_max_error(field: TorusChartField, n_points: int = 100, rng=None) -> float:
    """Largest deviation of the field from (1, -x, 1) over random boundary points."""
    rng = rng if rng is not None else np.random.default_rng(0)
    t = rng.random(n_points)
    z = rng.random(n_points)
    x = np.where(np.arange(n_points) % 2 == 0, 1.0, -1.0)
    pts = np.stack([t, x, z], axis=-1)
    target = np.stack([np.ones(n_points), -x, np.ones(n_points)], axis=-1)
    return float(np.max(np.abs(field(pts) - target)))


def verify_torus_model(lam: int, dt: float = DT_DEFAULT, tol: float = CLOSURE_TOL):
    """Full check of the torus-destruction model at one coefficient.

    Returns (report, orbits); `orbits` are the detected trajectories for an
    optional CSV dump.  Raises OrbitNotClosed if either orbit fails to close.
    """
    field = TorusChartField(lam)
    orbits = detect_torus_orbits(field, dt, tol)
    b_values = (0.25, 0.75)
    expected_signs = ((-1, -1), (1, -1))
    entries = []
    signs_ok = True
    for (traj, signs), b_star, expected in zip(orbits, b_values, expected_signs):
        err = wrapped_distance(traj.end, traj.start, field.circle_mask)
        entries.append({"b": b_star, "closure_error": err, "floquet": list(signs)})
        signs_ok = signs_ok and signs == expected
    bmax = boundary_max_error(field)
    report = {
        "model": "torus-destruction",
        "lambda": lam,
        "orbits": entries,
        "boundary_max_error": bmax,
        "pass": bool(signs_ok and bmax < BOUNDARY_TOL),
    }
    return report, orbits


def verify_round_handle(dt: float = DT_DEFAULT):
    """Check the round-handle model: closed orbit, decay rate, and RK4 order.

    The order ratio compares endpoint errors against the exact solution
    x(1) = 0.5*exp(-1) from x0 = 0.5 at step sizes 0.05 and 0.025; fourth
    order predicts a ratio near 16, and anything >= 8 passes.
    """
    field = round_handle_field("attracting")
    orbit = rk4_integrate(field, np.array([0.0, 0.0]), dt, 1.0)
    closure = wrapped_distance(orbit.end, orbit.start, field.circle_mask)

    decay = rk4_integrate(field, np.array([0.0, 0.5]), dt, 10.0)
    decay_err = abs(decay.end[1] - 0.5 * math.exp(-10.0))

    exact = 0.5 * math.exp(-1.0)
    errs = []
    for step in (0.05, 0.025):
        traj = rk4_integrate(field, np.array([0.0, 0.5]), step, 1.0)
        errs.append(abs(traj.end[1] - exact))
    ratio = errs[0] / errs[1] if errs[1] > 0 else math.inf
    report = {
        "model": "round-handle",
        "orbits": [{"closure_error": closure}],
        "decay_error": decay_err,
        "order_ratio": ratio,
        "pass": bool(closure < 1e-9 and decay_err < 1e-6 and ratio >= 8.0),
    }
    return report, [orbit]


def demo_curves() -> tuple[TorusCurve, TorusCurve]:
    """The tangency demonstration pair: a horizontal line and a curve
    touching it at a single point."""
    l1 = TorusCurve.line(1, 0, offset=0.0)
    l2 = TorusCurve.from_function(
        lambda s: np.stack([s, 0.1 * (1.0 - np.cos(2.0 * np.pi * s))], axis=-1), n=4096)
    return l1, l2


def verify_glue_demo():
    """Run the transversality repair on the demonstration pair."""
    l1, l2 = demo_curves()
    _isotopy, report = repair_transversality(l1, l2)
    return report


def verify_collar():
    _field, report = collar_reference_field()
    return report
