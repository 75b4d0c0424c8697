"""Moment polytopes, superpotentials and reference fibers of toric Fano surfaces.

Every facet offset is a rational multiple ``c * t`` of the Kähler parameter,
so the polytope is ``{x : <x, nu_i> >= -c_i t}`` and the Hori-Vafa
superpotential is ``sum_i q**c_i * z**nu_i``.  The polytope scales linearly
in t, so all geometry is computed at t = 1 and read as multiples of t.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .ring import LaurentPoly, Monomial, format_fraction, parse_fraction, qpow

__all__ = [
    "Facet",
    "PolytopeData",
    "ReferenceFiber",
    "SURFACES",
    "surface_catalogue",
    "superpotential",
    "vertices",
    "center_of_mass",
    "reference_point",
    "polytope_to_json",
    "polytope_from_json",
]

SURFACES = ("P1", "P2", "P1xP1", "Bl1P2", "Bl2P2")


@dataclass(frozen=True)
class Facet:
    normal: tuple
    offset_t: Fraction

    def __post_init__(self):
        nu = tuple(int(a) for a in self.normal)
        if not any(nu) or math.gcd(*nu) != 1:
            raise ValueError(f"facet normal {nu} is not a primitive integer vector")
        object.__setattr__(self, "normal", nu)
        object.__setattr__(self, "offset_t", Fraction(self.offset_t))

    def slack(self, x):
        """<x, nu> + c, for x given in units of t."""
        return sum(Fraction(a) * b for a, b in zip(x, self.normal)) + self.offset_t


@dataclass(frozen=True)
class PolytopeData:
    name: str
    n: int
    facets: tuple

    def __post_init__(self):
        object.__setattr__(self, "facets", tuple(self.facets))
        for f in self.facets:
            if len(f.normal) != self.n:
                raise ValueError(f"facet {f} does not have dimension {self.n}")
        if self.n not in (1, 2):
            raise ValueError("only curves and surfaces are supported")
        _check_bounded(self)

    def contains(self, x, strict=False):
        return all((f.slack(x) > 0) if strict else (f.slack(x) >= 0) for f in self.facets)


@dataclass(frozen=True)
class ReferenceFiber:
    """Torus fiber over ``x0 = x0_t * t`` carrying a flat connection with phases ``holonomy``."""

    x0_t: tuple
    holonomy: tuple = field(default=None)
    x0_const: tuple = field(default=None)

    def __post_init__(self):
        n = len(self.x0_t)
        object.__setattr__(self, "x0_t", tuple(Fraction(a) for a in self.x0_t))
        object.__setattr__(self, "holonomy", tuple(self.holonomy) if self.holonomy is not None else (0.0,) * n)
        object.__setattr__(
            self, "x0_const", tuple(Fraction(a) for a in self.x0_const) if self.x0_const is not None else (Fraction(0),) * n
        )


def _check_bounded(pd):
    normals = [f.normal for f in pd.facets]
    if pd.n == 1:
        if not ({1, -1} <= {nu[0] for nu in normals}):
            raise ValueError(f"polytope {pd.name} is unbounded")
        return
    for a, b in normals:
        for d in ((-b, a), (b, -a)):
            if all(d[0] * u + d[1] * v >= 0 for u, v in normals):
                raise ValueError(f"polytope {pd.name} is unbounded in direction {d}")


def surface_catalogue(name: str, rho=None) -> PolytopeData:
    """Named polytope.  ``rho`` sets the extra size parameters as multiples of t.

    * ``P1xP1``: ``rho`` is the size of the second factor (default 1).
    * ``Bl1P2``: exceptional size ``rho * t`` (default 1/3).
    * ``Bl2P2``: pair ``(rho1, rho2)`` (default 1/4 each).
    """
    key = {s.lower(): s for s in SURFACES}.get(str(name).lower())
    if key is None:
        raise KeyError(f"unknown surface {name!r}; choose from {', '.join(SURFACES)}")
    F = Facet
    if key == "P1":
        facets = [F((1,), 0), F((-1,), 1)]
    elif key == "P2":
        facets = [F((1, 0), 0), F((0, 1), 0), F((-1, -1), 1)]
    elif key == "P1xP1":
        r = Fraction(1 if rho is None else rho)
        if r <= 0:
            raise ValueError("second factor size must be positive")
        facets = [F((1, 0), 0), F((-1, 0), 1), F((0, 1), 0), F((0, -1), r)]
    elif key == "Bl1P2":
        r = Fraction(1, 3) if rho is None else Fraction(rho)
        if not 0 < r < 1:
            raise ValueError("exceptional size must satisfy 0 < rho < 1")
        facets = [F((1, 0), 0), F((0, 1), 0), F((-1, -1), 1), F((-1, 0), 1 - r)]
    else:
        r1, r2 = (Fraction(1, 4), Fraction(1, 4)) if rho is None else (Fraction(rho[0]), Fraction(rho[1]))
        if not (r1 > 0 and r2 > 0 and r1 + r2 < 1):
            raise ValueError("exceptional sizes must be positive with rho1 + rho2 < 1")
        facets = [F((1, 0), 0), F((0, 1), 0), F((-1, -1), 1), F((-1, 0), 1 - r1), F((0, -1), 1 - r2)]
    pd = PolytopeData(key, len(facets[0].normal), facets)
    _check_facets_supported(pd)
    return pd


def _check_facets_supported(pd):
    if pd.n == 1:
        return
    vs = vertices(pd)
    for f in pd.facets:
        if sum(1 for v in vs if f.slack(v) == 0) < 2:
            raise ValueError(f"facet {f} of {pd.name} is redundant for these sizes")


def superpotential(pd: PolytopeData) -> LaurentPoly:
    terms = {}
    for f in pd.facets:
        m = Monomial(f.offset_t, f.normal)
        if m in terms:
            raise ValueError(f"two facets share the monomial {m}")
        terms[m] = 1
    return LaurentPoly(pd.n, terms)


def vertices(pd: PolytopeData):
    """Vertices at t = 1, counter-clockwise for surfaces."""
    if pd.n == 1:
        lo = max(-f.offset_t for f in pd.facets if f.normal[0] == 1)
        hi = min(f.offset_t for f in pd.facets if f.normal[0] == -1)
        if lo >= hi:
            raise ValueError(f"polytope {pd.name} is empty")
        return [(lo,), (hi,)]
    pts = set()
    for f, g in combinations(pd.facets, 2):
        (a, b), (c, d) = f.normal, g.normal
        det = a * d - b * c
        if det == 0:
            continue
        # <x,nu_f> = -c_f, <x,nu_g> = -c_g
        e, h = -f.offset_t, -g.offset_t
        x = (Fraction(e * d - b * h), Fraction(a * h - e * c))
        x = (x[0] / det, x[1] / det)
        if pd.contains(x):
            pts.add(x)
    if len(pts) < 3:
        raise ValueError(f"polytope {pd.name} is degenerate")
    cx = sum(p[0] for p in pts) / len(pts)
    cy = sum(p[1] for p in pts) / len(pts)
    return sorted(pts, key=lambda p: math.atan2(p[1] - cy, p[0] - cx))


def center_of_mass(pd: PolytopeData) -> ReferenceFiber:
    """Exact barycenter, as multiples of t."""
    vs = vertices(pd)
    if pd.n == 1:
        return ReferenceFiber(((vs[0][0] + vs[1][0]) / 2,))
    area = Fraction(0)
    sx = sy = Fraction(0)
    for (x0, y0), (x1, y1) in zip(vs, vs[1:] + vs[:1]):
        cr = x0 * y1 - x1 * y0
        area += cr
        sx += (x0 + x1) * cr
        sy += (y0 + y1) * cr
    return ReferenceFiber((sx / (3 * area), sy / (3 * area)))


def reference_point(rf: ReferenceFiber):
    """Mirror point ``z0 = exp(-x0)`` as q-monomials ``q**a_i``."""
    if any(rf.x0_const):
        raise ValueError("fiber coordinates must be pure multiples of t")
    if any(float(h) % (2 * math.pi) for h in rf.holonomy):
        raise ValueError("only the trivial flat connection is supported")
    n = len(rf.x0_t)
    return [qpow(n, a) for a in rf.x0_t]


def polytope_to_json(pd: PolytopeData) -> dict:
    return {
        "name": pd.name,
        "n": pd.n,
        "facets": [{"normal": list(f.normal), "offset_t": format_fraction(f.offset_t)} for f in pd.facets],
    }


def polytope_from_json(obj) -> PolytopeData:
    if isinstance(obj, str):
        obj = json.loads(obj)
    facets = [Facet(tuple(f["normal"]), parse_fraction(f["offset_t"])) for f in obj["facets"]]
    return PolytopeData(obj.get("name", "custom"), int(obj["n"]), facets)
