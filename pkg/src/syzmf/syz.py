"""Fiberwise Fourier (SYZ) transform and numeric Floer-differential checks.

A Fourier term ``coeff * exp(-A(x)) * exp(i <y, v>)`` with area
``A = c * t + <v, x>`` is sent to ``coeff * q**c * z**v`` under
``z = exp(-x + i y)``, ``q = exp(-t)``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import toric
from .areas import AffineArea
from .matfac import MatrixFactorization, RingMatrix
from .ring import LaurentPoly, Monomial, lp_eval

__all__ = [
    "InadmissibleTermError",
    "FourierTerm",
    "FiberwiseEntry",
    "syz_transform",
    "syz_inverse",
    "syz_transform_matrix",
    "psi_to_factorization",
    "m1_eval",
    "FloerReport",
    "floer_square_check",
]


class InadmissibleTermError(ValueError):
    """A disk datum whose area is not of the form c t + <v, x>."""


def _check_admissible(term):
    if len(term.v) != term.area.n:
        raise InadmissibleTermError(f"class {term.v} and area {term.area} have different dimensions")
    if term.area.x != tuple(Fraction(a) for a in term.v):
        raise InadmissibleTermError(f"area {term.area} has x-part {term.area.x}, expected the class {term.v}")
    if term.area.const:
        raise InadmissibleTermError(f"area {term.area} has a constant not proportional to t")


@dataclass(frozen=True)
class FourierTerm:
    coeff: Fraction
    v: tuple
    area: AffineArea

    def __post_init__(self):
        object.__setattr__(self, "coeff", Fraction(self.coeff))
        object.__setattr__(self, "v", tuple(int(a) for a in self.v))
        _check_admissible(self)

    @property
    def n(self):
        return len(self.v)


class FiberwiseEntry:
    """Finite sum of Fourier terms; equal ``(v, area)`` keys are merged."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Sequence[FourierTerm] = ()):
        merged = {}
        for term in terms:
            if term.n != n:
                raise ValueError(f"term of dimension {term.n} in entry of dimension {n}")
            key = (term.v, term.area)
            merged[key] = merged.get(key, 0) + term.coeff
        self.n = n
        self.terms = tuple(
            FourierTerm(c, v, a) for (v, a), c in sorted(merged.items(), key=lambda kv: (kv[0][0], kv[0][1].sort_key())) if c
        )

    def __add__(self, other):
        return FiberwiseEntry(self.n, self.terms + other.terms)

    def __eq__(self, other):
        return isinstance(other, FiberwiseEntry) and self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, self.terms))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"FiberwiseEntry({self.n}, {list(self.terms)})"

    def evaluate(self, t, x, y) -> complex:
        return sum(
            (float(term.coeff) * math.exp(-term.area(t, x)) * cmath.exp(1j * sum(a * b for a, b in zip(y, term.v))) for term in self.terms),
            0j,
        )


def syz_transform(e: FiberwiseEntry) -> LaurentPoly:
    terms = {}
    for term in e.terms:
        _check_admissible(term)
        m = Monomial(term.area.t, term.v)
        terms[m] = terms.get(m, 0) + term.coeff
    return LaurentPoly(e.n, terms)


def syz_inverse(p: LaurentPoly) -> FiberwiseEntry:
    return FiberwiseEntry(p.n, [FourierTerm(c, m.zexp, AffineArea(m.qexp, m.zexp)) for m, c in p.items()])


def syz_transform_matrix(psi, n: int | None = None) -> RingMatrix:
    rows = []
    for i, row in enumerate(psi):
        out = []
        for j, e in enumerate(row):
            try:
                out.append(syz_transform(e))
            except InadmissibleTermError as exc:
                raise InadmissibleTermError(f"entry ({i},{j}): {exc}") from None
        rows.append(out)
    return RingMatrix(rows, n)


def psi_to_factorization(psi, lam: LaurentPoly | None = None) -> MatrixFactorization:
    """Transform a bipartite Ψ grid, whose diagonal blocks vanish, into ``[[0, F], [G, 0]]``."""
    M = syz_transform_matrix(psi)
    if M.rows != M.cols or M.rows % 2:
        raise ValueError("Ψ must be square of even size")
    r = M.rows // 2
    for i in range(M.rows):
        for j in range(M.cols):
            if (i < r) == (j < r) and M[i, j]:
                raise ValueError(f"Ψ entry ({i},{j}) lies in a diagonal block but is nonzero")
    F = RingMatrix([[M[i, j] for j in range(r, 2 * r)] for i in range(r)])
    G = RingMatrix([[M[i, j] for j in range(r)] for i in range(r, 2 * r)])
    return MatrixFactorization(r, F, G, lam)


# -- numerics ----------------------------------------------------------------------

def _as_psi(catalogue):
    if hasattr(catalogue, "psi"):
        return catalogue.psi()
    return catalogue


def _check_x(catalogue, t, x):
    bound = getattr(catalogue, "u_bound", None)
    if bound is None:
        return
    for xi in x:
        if not 0 < xi < float(bound) * t:
            raise ValueError(f"x = {tuple(x)} lies outside U = (0, {bound} t)^{len(x)} at t = {t}")


def m1_eval(catalogue, qval: float, x, y) -> np.ndarray:
    """Numeric Floer differential: sum of sign * exp(-A(x)) * exp(i <y, v>) per entry."""
    if not 0 < qval < 1:
        raise ValueError(f"qval must lie in (0, 1), got {qval}")
    t = -math.log(qval)
    x = [float(a) for a in x]
    y = [float(a) for a in y]
    _check_x(catalogue, t, x)
    psi = _as_psi(catalogue)
    return np.array([[e.evaluate(t, x, y) for e in row] for row in psi], dtype=complex)


@dataclass
class FloerReport:
    passed: bool
    samples: int
    tolerance: float
    max_residual: float
    max_oracle_error: float
    worst_sample: tuple | None = None

    def to_json(self):
        return {
            "passed": self.passed,
            "samples": self.samples,
            "tolerance": self.tolerance,
            "max_residual": self.max_residual,
            "max_oracle_error": self.max_oracle_error,
            "worst_sample": None if self.worst_sample is None else list(self.worst_sample),
        }


def sample_points(catalogue, samples: int, seed: int = 0, qrange=(0.01, 0.9), qval=None):
    """Seeded samples ``(q, x, y)`` with x in U and y in [0, 2 pi)^n."""
    rng = np.random.default_rng(seed)
    n = catalogue.n
    bound = float(catalogue.u_bound)
    out = []
    for _ in range(samples):
        q = float(qval) if qval is not None else float(rng.uniform(*qrange))
        t = -math.log(q)
        u = rng.uniform(0.0, 1.0, size=n)
        u = np.clip(u, 1e-6, 1 - 1e-6)
        x = tuple(float(a) * bound * t for a in u)
        y = tuple(float(a) for a in rng.uniform(0.0, 2 * math.pi, size=n))
        out.append((q, x, y))
    return out


def floer_square_check(catalogue, samples=100, seed=0, tolerance=1e-12, qrange=(0.01, 0.9), qval=None, W=None, z0=None) -> FloerReport:
    """Sample ``m1**2 - (W(z) - W(z0)) Id`` and the transform oracle.

    Residuals are relative to ``max(1, |W(z)| + |W(z0)|, max|m1|**2)``.
    ``W`` and ``z0`` default to the catalogue surface's superpotential and
    reference point.
    """
    if W is None or z0 is None:
        pd = toric.surface_catalogue(catalogue.surface)
        W = toric.superpotential(pd) if W is None else W
        z0 = toric.reference_point(toric.center_of_mass(pd)) if z0 is None else z0
    M = syz_transform_matrix(_as_psi(catalogue))
    pts = sample_points(catalogue, samples, seed, qrange, qval)
    worst = worst_or = 0.0
    worst_pt = None
    size = M.rows
    for q, x, y in pts:
        m1 = m1_eval(catalogue, q, x, y)
        z = [cmath.exp(-a + 1j * b) for a, b in zip(x, y)]
        Wz = lp_eval(W, q, z)
        Wz0 = lp_eval(W, q, [lp_eval(p, q, [1.0] * W.n) for p in z0])
        target = (Wz - Wz0) * np.eye(size)
        scale = max(1.0, abs(Wz) + abs(Wz0), float(np.max(np.abs(m1))) ** 2)
        res = float(np.max(np.abs(m1 @ m1 - target))) / scale
        sym = np.array([[lp_eval(M[i, j], q, z) for j in range(size)] for i in range(size)])
        oscale = max(1.0, float(np.max(np.abs(sym))))
        ores = float(np.max(np.abs(sym - m1))) / oscale
        if res > worst:
            worst, worst_pt = res, (q, x, y)
        worst_or = max(worst_or, ores)
    passed = worst < tolerance and worst_or < tolerance
    return FloerReport(passed, len(pts), tolerance, worst, worst_or, worst_pt)
