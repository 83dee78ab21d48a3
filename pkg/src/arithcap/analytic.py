"""Holomorphic maps on a domain: complex polynomials (full support) and
truncated series with an evaluation radius (evaluation-only), plus Taylor jets
at the center and polynomial preimages.

Preimage-dependent operations require a PolyMap; a SeriesMap supports exactly
the operations that only evaluate it (jets, symmetry checks, boundary
integrals).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .curves import DomainSpec
from .errors import AllCoefficientsBelowTolerance, ConstantMap
from .greens import GreenSolution
from .polys import IntPoly, RatPoly


class AnalyticMap:
    """Common interface: __call__(points) vectorized, deriv(points)."""

    def __call__(self, z):  # pragma: no cover - interface
        raise NotImplementedError

    def deriv(self, z):  # pragma: no cover - interface
        raise NotImplementedError


@dataclass(frozen=True)
class PolyMap(AnalyticMap):
    coeffs: tuple[complex, ...]  # coeffs[i] multiplies z^i

    def __init__(self, coeffs: Sequence[complex]):
        cs = [complex(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def from_rat_poly(cls, p: RatPoly | IntPoly) -> "PolyMap":
        return cls([complex(c) for c in p.coeffs])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        out = np.zeros(z.shape, dtype=complex)
        for c in reversed(self.coeffs):
            out = out * z + c
        return out

    def deriv(self, z):
        z = np.asarray(z, dtype=complex)
        out = np.zeros(z.shape, dtype=complex)
        for i in range(self.degree, 0, -1):
            out = out * z + i * self.coeffs[i]
        return out

    def shifted_power(self, center: complex, e: int) -> "PolyMap":
        """(p(z))^e as a PolyMap (helper for jet consistency checks)."""
        out = np.array([1.0 + 0j])
        base = np.array(self.coeffs, dtype=complex)
        for _ in range(e):
            out = np.convolve(out, base)
        return PolyMap(out)


@dataclass(frozen=True)
class SeriesMap(AnalyticMap):
    """sum c_k (z - center)^k valid for |z - center| <= radius, with a tail
    bound constant recorded for documentation of the truncation quality."""

    coeffs: tuple[complex, ...]
    center: complex
    radius: float
    tail_bound: float = 0.0

    def __init__(self, coeffs, center=0j, radius=1.0, tail_bound=0.0):
        object.__setattr__(self, "coeffs", tuple(complex(c) for c in coeffs))
        object.__setattr__(self, "center", complex(center))
        object.__setattr__(self, "radius", float(radius))
        object.__setattr__(self, "tail_bound", float(tail_bound))

    @classmethod
    def from_trunc_series(cls, s, center=0j, radius=1.0, tail_bound=0.0) -> "SeriesMap":
        return cls([complex(c) for c in s.coeffs], center, radius, tail_bound)

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        w = z - self.center
        if np.any(np.abs(w) > self.radius * (1 + 1e-12)):
            raise ValueError("evaluation outside the series radius")
        out = np.zeros(z.shape, dtype=complex)
        for c in reversed(self.coeffs):
            out = out * w + c
        return out

    def deriv(self, z):
        z = np.asarray(z, dtype=complex)
        w = z - self.center
        out = np.zeros(z.shape, dtype=complex)
        for i in range(len(self.coeffs) - 1, 0, -1):
            out = out * w + i * self.coeffs[i]
        return out


@dataclass(frozen=True)
class JetData:
    """Leading Taylor data of f - f(O) at the center: vanishing order e and
    the coefficients c_e, c_{e+1}, ... in the coordinate z - O."""

    order: int                  # e >= 1
    coeffs: tuple[complex, ...]  # c_e ...
    tolerance: float
    radius: float

    @property
    def vanishing_order(self) -> int:
        return self.order

    @property
    def leading(self) -> complex:
        return self.coeffs[0]


def taylor_jet(
    f: AnalyticMap,
    domain: DomainSpec,
    order: int = 8,
    radius: float | None = None,
    rel_tolerance: float = 1e-10,
) -> JetData:
    """Taylor coefficients c_1..c_order of f - f(O) at O by trapezoid Cauchy
    integrals on a small circle (spectrally accurate); the vanishing order is
    the first index whose coefficient clears rel_tolerance * max|c_j|.
    """
    if order < 1:
        raise ValueError("order must be at least 1")
    O = domain.center
    if radius is None:
        radius = 0.5 * domain.boundary_distance(O)
    if isinstance(f, SeriesMap):
        radius = min(radius, 0.8 * f.radius)
    n = max(64, 4 * (order + 1))
    theta = np.linspace(0.0, 2 * np.pi, n, endpoint=False)
    ring = O + radius * np.exp(1j * theta)
    vals = f(ring)
    hat = np.fft.fft(vals) / n
    ks = np.arange(1, order + 1)
    cs = hat[1 : order + 1] / radius ** ks.astype(float)
    top = float(np.max(np.abs(cs)))
    if top == 0.0:
        raise AllCoefficientsBelowTolerance("all jet coefficients vanish")
    mask = np.abs(cs) >= rel_tolerance * top
    if not np.any(mask):
        raise AllCoefficientsBelowTolerance("no coefficient above tolerance")
    e = int(ks[mask][0])
    return JetData(
        order=e,
        coeffs=tuple(cs[e - 1 :]),
        tolerance=rel_tolerance,
        radius=radius,
    )


def jet_cap_norm(jet: JetData, sol: GreenSolution) -> float:
    """log of the capacitary norm of the e-jet: log|c_e| + e * robin_c.

    The norm weighs |c_e| against the e-th power of the conformal radius
    e^{robin_c}; with this convention the identity jet on a radius-rho disk
    has log-norm log(rho).
    """
    return float(np.log(np.abs(jet.leading)) + jet.order * sol.robin_c)


def preimages(f: AnalyticMap, y: complex, domain: DomainSpec, cluster_tol: float = 1e-7):
    """All solutions of f(z) = y: (point, multiplicity, inside V) triples.

    Companion-matrix roots (numpy), three Newton polishing sweeps, then
    clustering into multiplicity groups.
    """
    if not isinstance(f, PolyMap):
        raise TypeError("preimages require a polynomial map")
    coeffs = np.array(f.coeffs, dtype=complex)
    if len(coeffs) > 0:
        coeffs = coeffs.copy()
        coeffs[0] -= y
    deg = len(coeffs) - 1
    while deg >= 0 and coeffs[deg] == 0:
        deg -= 1
    if deg < 1:
        raise ConstantMap("map is constant; fibers are not finite")
    roots = np.roots(coeffs[: deg + 1][::-1]).astype(complex)
    for _ in range(3):
        fv = f(roots) - y
        dv = f.deriv(roots)
        safe = np.abs(dv) > 1e-14 * (1 + np.abs(fv))
        roots[safe] = roots[safe] - fv[safe] / dv[safe]
    scale = 1.0 + np.max(np.abs(roots))
    used = np.zeros(len(roots), dtype=bool)
    out = []
    for i in range(len(roots)):
        if used[i]:
            continue
        group = np.abs(roots - roots[i]) < cluster_tol * scale
        group &= ~used
        mult = int(group.sum())
        rep = complex(roots[group].mean())
        used |= group
        out.append((rep, mult, bool(domain.contains([rep])[0])))
    return out


def ramification_at_center(f: AnalyticMap, domain: DomainSpec, order: int = 8) -> JetData:
    """Jet of f - f(O) at O (the ramification index is jet.order)."""
    return taylor_jet(f, domain, order=order)
