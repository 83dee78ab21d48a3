"""Patching: from a monic rational polynomial with certified infimum > 1 on the
complement K of a bounded open set U, produce a monic *integer* polynomial with
the same property, together with an exact-arithmetic certificate.

Pipeline: rationalize the input, square it if linear, certify a rational lower
bound R for inf_K |f|, pick the exponent chain (r, k, N = dk, M > k), then run
the greedy fractional-part clearing on f^M.  Every inequality the construction
needs is checked in exact rational arithmetic; floating point only appears in
the optional spot check of |p| at sample points.

U is restricted to finite unions of open disks, which keeps membership tests
exact and covers every desk-scale experiment.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath
import numpy as np

from .errors import (
    DegreeCapExceeded,
    InsufficientMargin,
    NoMargin,
    NotFound,
    NotMonic,
    TopCoefficientsNotIntegral,
)
from .integerize import minimal_integerizing_exponent, verify_top_integrality
from .polys import IntPoly, RatPoly, int_poly_div_exact, scaled_integer_form


# --- region geometry -----------------------------------------------------------


@dataclass(frozen=True)
class Hole:
    center: complex
    radius: float

    def __post_init__(self):
        if self.radius <= 0:
            raise ValueError("hole radius must be positive")


@dataclass(frozen=True)
class RegionSpec:
    """U = union of open disks; K = C \\ U is its closed complement."""

    holes: tuple[Hole, ...]

    def __init__(self, holes: Sequence):
        hs = tuple(h if isinstance(h, Hole) else Hole(complex(h[0]), float(h[1])) for h in holes)
        if not hs:
            raise ValueError("need at least one hole")
        object.__setattr__(self, "holes", hs)

    @property
    def bounding_radius(self) -> Fraction:
        """Smallest radius (exactly, over the stored binary floats) with U inside D_r."""
        return max(
            Fraction(abs(h.center)) + Fraction(h.radius) if h.center else Fraction(h.radius)
            for h in self.holes
        )

    def contains(self, z: complex) -> bool:
        """z in U (strict interior of some hole)."""
        return any(abs(z - h.center) < h.radius for h in self.holes)

    @classmethod
    def disk(cls, radius: float, center: complex = 0j) -> "RegionSpec":
        return cls([(center, radius)])


def _quarter_above(x: Fraction) -> Fraction:
    """Smallest multiple of 1/4 strictly greater than x."""
    return Fraction(math.floor(4 * x) + 1, 4)


def _sqrt_lower(q: Fraction) -> Fraction:
    """A rational lower bound for sqrt(q), tight to 1/denominator."""
    if q <= 0:
        return Fraction(0)
    return Fraction(math.isqrt(q.numerator * q.denominator), q.denominator)


def _abs2_at(f: RatPoly, x: Fraction, y: Fraction) -> Fraction:
    """|f(x + iy)|^2 in exact rational arithmetic."""
    re, im = Fraction(0), Fraction(0)
    for c in reversed(f.coeffs):
        re, im = re * x - im * y + c, re * y + im * x
    return re * re + im * im


def _lipschitz_bound(f: RatPoly, rho: Fraction) -> Fraction:
    """Exact upper bound for |f'| on the closed disk of radius rho >= 1."""
    return sum(
        (i * abs(Fraction(c)) * rho ** (i - 1) for i, c in enumerate(f.coeffs) if i >= 1),
        Fraction(0),
    )


def certified_lower_bound(
    f: RatPoly,
    region: RegionSpec,
    r: Fraction,
    grid: int = 64,
    max_refinements: int = 4,
) -> Fraction:
    """Certified rational L <= inf over K intersect closed D_r of |f|.

    Covers the disk with grid x grid square cells, keeps every cell that could
    meet K, and lower-bounds |f| on each kept cell by the exact value at its
    center minus Lipschitz slack.  A cell is discarded only when it sits
    entirely inside a single hole, so the bound is conservative at every
    resolution and converges as the grid refines.  Refines up to
    max_refinements doublings while the bound stays <= 0, then raises NoMargin.
    """
    if grid < 2:
        raise ValueError("grid resolution must be at least 2")
    r = Fraction(r)
    holes = [(Fraction(h.center.real), Fraction(h.center.imag), Fraction(h.radius)) for h in region.holes]

    n = grid
    for _ in range(max_refinements + 1):
        s = 2 * r / n
        h = s * Fraction(3, 4)  # rational bound >= half-diagonal s/sqrt(2)
        lip = _lipschitz_bound(f, r + 2 * h)
        slack = lip * h
        keep_r2 = (r + h) ** 2
        best: Fraction | None = None
        for i in range(n):
            cx = -r + (2 * i + 1) * r / n
            for j in range(n):
                cy = -r + (2 * j + 1) * r / n
                if cx * cx + cy * cy > keep_r2:
                    continue
                inside_hole = False
                for hx, hy, hr in holes:
                    if hr > h:
                        dx, dy = cx - hx, cy - hy
                        if dx * dx + dy * dy <= (hr - h) ** 2:
                            inside_hole = True
                            break
                if inside_hole:
                    continue
                val = _sqrt_lower(_abs2_at(f, cx, cy)) - slack
                if best is None or val < best:
                    best = val
        if best is not None and best > 0:
            return best
        n *= 2
    raise NoMargin(f"no positive lower bound for |f| on K within D_{float(r):g} at grid {n // 2}")


def _outside_disk_bound(f: RatPoly, r: Fraction) -> Fraction:
    """Exact bound |f(x)| >= r^{d-1} (r - sum|b_i|) for all |x| >= r.

    Valid (and increasing in |x|) once r exceeds the non-leading coefficient
    sum; callers arrange r > sum + 2.
    """
    s = f.abs_tail_sum()
    if r <= s:
        raise ValueError("radius below coefficient sum")
    return r ** (f.degree - 1) * (r - s) if f.degree >= 1 else Fraction(1)


# --- parameters ------------------------------------------------------------------


@dataclass(frozen=True)
class PatchParams:
    epsilon: Fraction
    r: Fraction
    R_lower: Fraction
    k: int
    N: int
    M: int
    d: int

    def inequalities_hold(self) -> bool:
        """Exact check of the two certificate inequalities plus M > k, N = dk.

        R^{k-1} > r^d d/(R-1) + 2   (inside the disk)
        R^{k-d-1} > d/(R-1) + 2     (outside, via |f(x)| > |x|)
        """
        R, r, d, k = self.R_lower, self.r, self.d, self.k
        if self.epsilon <= 0 or R <= 1 or self.N != d * k or self.M <= k:
            return False
        ok1 = R ** (k - 1) > r ** d * Fraction(d) / (R - 1) + 2
        ok2 = R ** (k - d - 1) > Fraction(d) / (R - 1) + 2
        return ok1 and ok2

    def growth_inequality_holds(self, tail_sum: Fraction) -> bool:
        """|x|^{d-1}(|x| - sum|b_i|) > |x| at |x| = r, so |f(x)| > |x| outside D_r."""
        return self.r ** (self.d - 1) * (self.r - tail_sum) > self.r


@dataclass(frozen=True)
class SpotCheck:
    num_samples: int
    min_abs_value: float
    min_log10_abs: float


@dataclass(frozen=True)
class PatchCertificate:
    p: IntPoly
    params: PatchParams
    greedy_steps: int
    spot_check: SpotCheck
    exact_cert_ok: bool
    reconstruction_ok: bool
    route: str  # "patched" | "already-integer"


@dataclass(frozen=True)
class PatchConfig:
    grid: int = 48
    max_refinements: int = 4
    max_degree: int = 8192
    search_cap: int = 65536
    denominator_limit: int = 64
    spot_samples: int = 1000
    seed: int = 0
    threads: int = 1
    spot_dps_extra: int = 60
    check_reconstruction: bool = True


def choose_parameters(f: RatPoly, region: RegionSpec, config: PatchConfig = PatchConfig()) -> PatchParams:
    """Pick (r, k, N, M) for the greedy on f^M, all inequalities exact.

    r: smallest quarter-integer with U inside D_r, r > sum|coeffs| + 2 and the
       growth inequality |f(x)| > |x| outside D_r.
    k: minimal value making both certificate inequalities true.
    M: smallest verified integerizing exponent above k (1 for integral f,
       where the greedy is a no-op and no bound on M is needed).
    """
    if not f.is_monic:
        raise NotMonic("f must be monic")
    d = f.degree
    if d < 2:
        raise ValueError("choose_parameters needs deg f >= 2 (square first)")
    tail = f.abs_tail_sum()
    r = _quarter_above(max(region.bounding_radius, tail + 2))
    grid_bound = certified_lower_bound(f, region, r, config.grid, config.max_refinements)
    R = min(grid_bound, _outside_disk_bound(f, r))
    if R <= 1:
        raise InsufficientMargin(f"certified lower bound {float(R):.6g} <= 1")
    eps = min(R - 1, Fraction(1))

    rhs1 = r ** d * Fraction(d) / (R - 1) + 2
    rhs2 = Fraction(d) / (R - 1) + 2
    k = 1
    while not (R ** (k - 1) > rhs1 and R ** (k - d - 1) > rhs2):
        k += 1
        if k > 10_000:
            raise InsufficientMargin("certificate inequalities unreachable; R too close to 1")
    N = d * k

    if f.is_integral:
        M = 1
    else:
        try:
            M = minimal_integerizing_exponent(f, N, cap=config.search_cap, min_exponent=k + 1).M
        except NotFound as exc:
            raise DegreeCapExceeded(str(exc)) from exc
    if M * d > config.max_degree:
        raise DegreeCapExceeded(f"patched degree M*d = {M * d} exceeds cap {config.max_degree}")
    params = PatchParams(epsilon=eps, r=r, R_lower=R, k=k, N=N, M=M, d=d)
    if not f.is_integral:
        assert params.inequalities_hold() and params.growth_inequality_holds(tail)
    return params


# --- the greedy ---------------------------------------------------------------------


def clear_fractional_parts(
    f: RatPoly, M: int, N: int, want_ledger: bool = False
):
    """Greedy fractional-part clearing on f^M (monic f, top N coefficients of
    f^M already integral).

    Step i targets degree t = Md - N + 1 - i, writes t = d q_i + r_i with
    0 <= r_i < d, and subtracts {a_t} f^{q_i} x^{r_i}, where {a} in [0,1) is
    the fractional part (a - {a} = floor(a), also for negative a).  After the
    step, every coefficient at degree >= t is an integer; after all
    Md - N + 1 steps the result is a monic integer polynomial of degree Md.

    Returns the IntPoly, or (IntPoly, ledger) with ledger a list of
    (q_i, r_i, fraction) when want_ledger is set.  The reconstruction identity
    output + sum {a_i} f^{q_i} x^{r_i} = f^M holds exactly.
    """
    if not f.is_monic:
        raise NotMonic("f must be monic")
    if not verify_top_integrality(f, M, N):
        raise TopCoefficientsNotIntegral(f"top {N} coefficients of f^{M} are not all integers")
    d = f.degree
    num, cpow, state = _scaled_greedy_state(f, M)
    g, c = state
    Md = M * d

    t_top = Md - N
    q_cur = t_top // d
    Gq = g ** q_cur  # c^q f^q, maintained by exact division as q descends
    ledger = []
    for t in range(t_top, -1, -1):
        q, rr = divmod(t, d)
        while q_cur > q:
            Gq = int_poly_div_exact(Gq, g)
            q_cur -= 1
        D_t = cpow[Md - t]
        fn = num[t] % D_t
        if fn:
            _scaled_subtract(num, cpow, fn, Gq, q, rr, t)
        ledger.append((q, rr, Fraction(fn, D_t)))
        assert num[t] % D_t == 0, "greedy step left a fractional coefficient"
    out = IntPoly([n // cpow[Md - t] for t, n in enumerate(num)])
    assert out.is_monic and out.degree == Md
    return (out, ledger) if want_ledger else out


def _scaled_greedy_state(f: RatPoly, M: int):
    """Integer working state for the greedy: num[t] = (f^M coeff of x^t) * c^{Md-t}.

    Every quantity the greedy touches at degree t has denominator dividing
    c^{Md-t} (a step at degree t shifts degree s = t - delta by a fraction
    whose extra denominator divides c^delta), so the scaled numerators stay
    integers throughout and no gcd normalization is ever needed.
    """
    d = f.degree
    g, c = scaled_integer_form(f)  # f = g / c
    G = g ** M
    Md = M * d
    cpow = [1] * (Md + 1)
    for e in range(1, Md + 1):
        cpow[e] = cpow[e - 1] * c
    num = []
    for t, gi in enumerate(G.coeffs):
        e = Md - t - M
        if e >= 0:
            num.append(gi * cpow[e])
        else:
            quot, rem = divmod(gi, cpow[-e])
            assert rem == 0
            num.append(quot)
    return num, cpow, (g, c)


def _scaled_subtract(num: list, cpow: list, fn: int, Gq, q: int, rr: int, t: int):
    """num -= fn/c^{Md-t} * (c^q f^q) x^rr / c^q, all over the fixed denominators.

    The term lands at degree s = j + rr with scale exponent e = t - s - q;
    negative exponents divide Gq's coefficient exactly (its denominator bound)."""
    for j, gcj in enumerate(Gq.coeffs):
        if not gcj:
            continue
        s = j + rr
        e = t - s - q
        if e >= 0:
            num[s] -= fn * gcj * cpow[e]
        else:
            quot, rem = divmod(gcj, cpow[-e])
            assert rem == 0
            num[s] -= fn * quot


def reconstruction_residual(f: RatPoly, M: int, p: IntPoly, ledger) -> RatPoly:
    """f^M - p - sum {a_i} f^{q_i} x^{r_i}; exact zero for a faithful ledger."""
    d = f.degree
    num, cpow, (g, c) = _scaled_greedy_state(f, M)
    Md = M * d
    for i, pc in enumerate(p.coeffs):
        num[i] -= pc * cpow[Md - i]
    q_cur = None
    Gq = None
    for q, rr, frac in ledger:
        if frac == 0:
            continue
        if q_cur is None or q > q_cur:
            Gq = g ** q
            q_cur = q
        while q_cur > q:
            Gq = int_poly_div_exact(Gq, g)
            q_cur -= 1
        t = d * q + rr
        D_t = cpow[Md - t]
        fn = frac.numerator * (D_t // frac.denominator)  # frac over the fixed scale
        _scaled_subtract(num, cpow, fn, Gq, q, rr, t)
    return RatPoly(
        [Fraction(n, cpow[Md - t]) for t, n in enumerate(num)]
    )


# --- rationalization ------------------------------------------------------------------


def rationalize(
    m: RatPoly,
    region: RegionSpec,
    epsilon: Fraction,
    r: Fraction,
    limit: int = 64,
) -> RatPoly:
    """Monic approximation with denominators <= limit, each coefficient within
    epsilon / (2 d r^{d-1}) of the input's; identity when already within the
    limit.  The perturbation bound gives sup over D_r of |output - input| < eps/2.
    """
    if not m.is_monic:
        raise NotMonic("m must be monic")
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    d = m.degree
    bound = Fraction(epsilon) / (2 * d * Fraction(r) ** (d - 1))
    out = []
    for a in m.coeffs[:-1]:
        a = Fraction(a)
        if a.denominator <= limit:
            out.append(a)
            continue
        lim = limit
        b = a.limit_denominator(lim)
        while abs(b - a) >= bound:
            lim *= 2
            b = a.limit_denominator(lim)
        out.append(b)
    return RatPoly(out + [1])


# --- spot check ---------------------------------------------------------------------


def _sample_kr_points(region: RegionSpec, r: float, count: int, seed: int) -> list[complex]:
    """Deterministic samples of K intersect closed D_r: hole boundaries, the
    circle |z| = r, and uniform rejection samples of the disk minus U."""
    rng = np.random.default_rng(seed)
    pts: list[complex] = []
    n_ring = max(count // 4, 1)
    per_hole = max(n_ring // len(region.holes), 1)
    for hole in region.holes:
        theta = rng.uniform(0, 2 * math.pi, per_hole)
        pts.extend(hole.center + hole.radius * np.exp(1j * theta))
    theta = rng.uniform(0, 2 * math.pi, n_ring)
    pts.extend(r * np.exp(1j * theta))
    attempts = 0
    while len(pts) < count and attempts < 200 * count:
        z = complex(rng.uniform(-r, r), rng.uniform(-r, r))
        attempts += 1
        if abs(z) <= r and not region.contains(z):
            pts.append(z)
    while len(pts) < count:  # pathological cover: fall back to the outer circle
        pts.append(r * complex(math.cos(len(pts)), math.sin(len(pts))))
    return pts[:count]


def _min_abs_chunk(coeffs: tuple, points: list[complex], dps: int) -> tuple[float, float]:
    with mpmath.workdps(dps):
        best = None
        for z in points:
            zz = mpmath.mpc(z)
            acc = mpmath.mpc(0)
            for c in reversed(coeffs):
                acc = acc * zz + c
            a = abs(acc)
            if best is None or a < best:
                best = a
        log10 = mpmath.log10(best) if best > 0 else mpmath.mpf("-inf")
        return float(best), float(log10)


def spot_check_min_abs(p: IntPoly, region: RegionSpec, r: float, config: PatchConfig) -> SpotCheck:
    """High-precision |p| at >= spot_samples points of K intersect closed D_r."""
    pts = _sample_kr_points(region, r, config.spot_samples, config.seed)
    dps = config.spot_dps_extra + max(p.degree, 1) // 12
    workers = max(1, config.threads)
    if workers == 1 or len(pts) < 4 * workers:
        mn, lg = _min_abs_chunk(p.coeffs, pts, dps)
    else:
        from concurrent.futures import ProcessPoolExecutor

        chunks = [pts[i::workers] for i in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_min_abs_chunk, [p.coeffs] * workers, chunks, [dps] * workers))
        mn, lg = min(results)
    return SpotCheck(num_samples=len(pts), min_abs_value=mn, min_log10_abs=lg)


# --- the full pipeline -----------------------------------------------------------------


def patch(m: RatPoly, region: RegionSpec, config: PatchConfig = PatchConfig()) -> PatchCertificate:
    """Full patching pipeline; see the module docstring.

    An input that is already a monic integer polynomial with certified bound
    > 1 is returned unchanged (route "already-integer").
    """
    if not m.is_monic:
        raise NotMonic("m must be monic")
    if m.degree < 1:
        raise InsufficientMargin("constant polynomial cannot exceed 1 on an unbounded set")

    tail_m = m.abs_tail_sum()
    r0 = _quarter_above(max(region.bounding_radius, tail_m + 2))
    grid_bound = certified_lower_bound(m, region, r0, config.grid, config.max_refinements)
    L_m = min(grid_bound, _outside_disk_bound(m, r0))
    if L_m <= 1:
        raise InsufficientMargin(f"certified lower bound {float(L_m):.6g} <= 1 for the input")
    eps = min(L_m - 1, Fraction(1))

    if m.is_integral:
        p = m.to_int_poly()
        params = PatchParams(epsilon=eps, r=r0, R_lower=L_m, k=0, N=0, M=1, d=m.degree)
        sc = spot_check_min_abs(p, region, float(r0), config)
        return PatchCertificate(
            p=p, params=params, greedy_steps=0, spot_check=sc,
            exact_cert_ok=True, reconstruction_ok=True, route="already-integer",
        )

    f = rationalize(m, region, eps, r0, config.denominator_limit)
    if f.degree <= 1:
        f = f * f
    params = choose_parameters(f, region, config)
    # the certificate records epsilon for the *input* polynomial m
    params = dataclasses.replace(params, epsilon=eps)
    p, ledger = clear_fractional_parts(f, params.M, params.N, want_ledger=True)
    recon_ok = True
    if config.check_reconstruction:
        recon_ok = reconstruction_residual(f, params.M, p, ledger).is_zero
    sc = spot_check_min_abs(p, region, float(params.r), config)
    cert_ok = params.inequalities_hold() and params.growth_inequality_holds(f.abs_tail_sum())
    return PatchCertificate(
        p=p, params=params, greedy_steps=len(ledger), spot_check=sc,
        exact_cert_ok=cert_ok, reconstruction_ok=recon_ok, route="patched",
    )


# --- best-effort heuristic (no guarantee; failure reported as NotFound) -----------------


def heuristic_real_candidate(samples: Sequence[complex], degree_budget: int = 8) -> RatPoly:
    """Best-effort search for a monic rational polynomial with empirical
    min |p| > 1 over the sample cloud.

    Candidates place all roots at Fekete points of a disk inside the sampled
    set's complement around 0 (for n equally spaced points on a circle of
    radius rho the product collapses to x^n - rho^n), plus the degenerate
    all-roots-at-center x^n.  This is known to fail in general -- the sampled
    set may force every monic polynomial below 1 somewhere -- and the failure
    is reported as NotFound rather than papered over.
    """
    samples = [complex(w) for w in samples]
    if not samples:
        raise ValueError("empty sample cloud")
    delta = min(abs(w) for w in samples)
    rho = delta * (1 - 1 / 16)
    best: tuple[float, RatPoly] | None = None
    for n in range(1, degree_budget + 1):
        cands = [RatPoly([0] * n + [1])]
        if rho > 0:
            const = Fraction(rho ** n).limit_denominator(10 ** 6)
            cands.append(RatPoly([-const] + [0] * (n - 1) + [1]))
        for cand in cands:
            emp = min(abs(cand(w)) for w in samples)
            if best is None or emp > best[0]:
                best = (emp, cand)
        if best is not None and best[0] > 1:
            return best[1]
    raise NotFound(
        f"no monic candidate exceeded 1 on the samples (best empirical min {best[0]:.4g})"
    )
