"""Z/2-graded matrices over the Laurent ring and matrix factorizations.

A matrix factorization of W is stored through its two off-diagonal blocks,
``M = [[0, F], [G, 0]]`` with ``F G = G F = (W - lam) Id``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .ring import (
    DimensionError,
    LaurentPoly,
    lp_div_linear,
    lp_subst_point,
    one,
    poly_from_json,
    poly_to_json,
    var,
    zero,
)

__all__ = [
    "RingMatrix",
    "FactorPair",
    "MatrixFactorization",
    "VerifyReport",
    "mf_koszul",
    "mf_square",
    "mf_verify",
    "mf_tensor",
    "mf_from_point",
    "telescoping_pairs",
    "mf_to_json",
    "mf_from_json",
    "mf_to_latex",
    "poly_to_latex",
]


class RingMatrix:
    """Dense rectangular grid of LaurentPoly entries over a common ring."""

    __slots__ = ("rows", "cols", "n", "_e")

    def __init__(self, entries: Sequence[Sequence[LaurentPoly]], n: int | None = None):
        rows = [list(r) for r in entries]
        if not rows or not rows[0]:
            raise ValueError("matrix must have at least one row and one column")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged matrix")
        dims = {e.n for r in rows for e in r}
        if len(dims) != 1:
            raise DimensionError(f"entries live in rings of dimensions {sorted(dims)}")
        self.n = dims.pop()
        if n is not None and n != self.n:
            raise DimensionError(f"expected dimension {n}, entries have {self.n}")
        self.rows = len(rows)
        self.cols = width
        self._e = tuple(tuple(r) for r in rows)

    @classmethod
    def zeros(cls, rows, cols, n):
        z = zero(n)
        return cls([[z] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, r, n, scalar=None):
        s = one(n) if scalar is None else scalar
        z = zero(n)
        return cls([[s if i == j else z for j in range(r)] for i in range(r)])

    def __getitem__(self, ij):
        i, j = ij
        return self._e[i][j]

    def to_lists(self):
        return [list(r) for r in self._e]

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __eq__(self, other):
        return isinstance(other, RingMatrix) and self._e == other._e

    def __hash__(self):
        return hash(self._e)

    def __add__(self, other):
        self._same_shape(other)
        return RingMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self._e, other._e)])

    def __sub__(self, other):
        self._same_shape(other)
        return RingMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self._e, other._e)])

    def __neg__(self):
        return RingMatrix([[-a for a in r] for r in self._e])

    def scale(self, c):
        return RingMatrix([[c * a for a in r] for r in self._e])

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        if self.n != other.n:
            raise DimensionError(f"dimension mismatch: {self.n} vs {other.n}")
        out = []
        # skip zero entries; the Koszul and tensor matrices are mostly sparse
        cols_nz = [[(k, other._e[k][j]) for k in range(other.rows) if other._e[k][j]] for j in range(other.cols)]
        for r in self._e:
            row = []
            for nz in cols_nz:
                acc = zero(self.n)
                for k, b in nz:
                    a = r[k]
                    if a:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return RingMatrix(out)

    def kron(self, other):
        return RingMatrix(
            [
                [a * b for a in ra for b in rb]
                for ra in self._e
                for rb in other._e
            ]
        )

    def _same_shape(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def nonzero_locations(self):
        return [(i, j) for i in range(self.rows) for j in range(self.cols) if self._e[i][j]]

    def __repr__(self):
        return "RingMatrix([" + ", ".join("[" + ", ".join(str(e) for e in r) + "]" for r in self._e) + "])"


def block(blocks):
    """Assemble a matrix from a grid of RingMatrix blocks."""
    rows = []
    for brow in blocks:
        height = brow[0].rows
        for i in range(height):
            row = []
            for b in brow:
                row.extend(b._e[i])
            rows.append(row)
    return RingMatrix(rows)


@dataclass(frozen=True)
class FactorPair:
    f: LaurentPoly
    g: LaurentPoly

    def __post_init__(self):
        if self.f.n != self.g.n:
            raise DimensionError(f"factor pair dimensions differ: {self.f.n} vs {self.g.n}")

    @property
    def product(self):
        return self.f * self.g


@dataclass(frozen=True)
class MatrixFactorization:
    """``[[0, F], [G, 0]]`` with half-rank ``r`` and offset ``lam``.

    ``lam`` may be ``None`` when the construction does not pin it down
    (a bare Koszul factorization); ``mf_verify`` then infers it.
    """

    r: int
    F: RingMatrix
    G: RingMatrix
    lam: LaurentPoly | None = None

    def __post_init__(self):
        if self.F.shape != (self.r, self.r) or self.G.shape != (self.r, self.r):
            raise ValueError(f"blocks must be {self.r}x{self.r}")
        if self.F.n != self.G.n:
            raise DimensionError("F and G live in different rings")
        if self.lam is not None:
            if self.lam.n != self.F.n:
                raise DimensionError("lambda lives in a different ring")
            if not self.lam.is_z_free():
                raise ValueError(f"lambda must be free of z variables, got {self.lam}")

    @property
    def n(self):
        return self.F.n

    def full(self) -> RingMatrix:
        z = RingMatrix.zeros(self.r, self.r, self.n)
        return block([[z, self.F], [self.G, z]])

    def with_lambda(self, lam):
        return MatrixFactorization(self.r, self.F, self.G, lam)


@dataclass
class VerifyReport:
    passed: bool
    lam: LaurentPoly
    lam_inferred: bool
    residual_FG: RingMatrix
    residual_GF: RingMatrix
    failures: list = field(default_factory=list)

    def to_json(self):
        return {
            "passed": self.passed,
            "lambda": poly_to_json(self.lam),
            "lambda_inferred": self.lam_inferred,
            "failures": [
                {"block": b, "row": i, "col": j, "residual": poly_to_json(p)} for b, i, j, p in self.failures
            ],
        }


# -- constructions -----------------------------------------------------------------

def mf_koszul(pairs: Sequence[FactorPair], lam: LaurentPoly | None = None) -> MatrixFactorization:
    """Koszul factorization of ``sum f_i g_i``.

    Appending ``(f, g)`` to ``(F0, G0)`` gives
    ``F = [[F0, f I], [-g I, G0]]`` and ``G = [[G0, -f I], [g I, F0]]``.
    """
    pairs = list(pairs)
    if not pairs:
        raise ValueError("need at least one factor pair")
    n = pairs[0].f.n
    for p in pairs:
        if p.f.n != n:
            raise DimensionError("factor pairs live in rings of different dimension")
    F = RingMatrix([[pairs[0].f]])
    G = RingMatrix([[pairs[0].g]])
    for p in pairs[1:]:
        r = F.rows
        fI = RingMatrix.identity(r, n, p.f)
        gI = RingMatrix.identity(r, n, p.g)
        F, G = block([[F, fI], [-gI, G]]), block([[G, -fI], [gI, F]])
    return MatrixFactorization(F.rows, F, G, lam)


def mf_square(m: MatrixFactorization):
    return m.F @ m.G, m.G @ m.F


def _infer_lambda(W, FG):
    d = W - FG[0, 0]
    return LaurentPoly._raw(W.n, {k: c for k, c in d._terms.items() if not any(k[2:])})


def mf_verify(m: MatrixFactorization, W: LaurentPoly) -> VerifyReport:
    """Check ``F G == G F == (W - lam) Id`` exactly.

    When ``m.lam`` is None, lam is taken to be the z-free part of
    ``W - (F G)[0, 0]``.
    """
    if W.n != m.n:
        raise DimensionError(f"potential has dimension {W.n}, factorization {m.n}")
    FG, GF = mf_square(m)
    inferred = m.lam is None
    lam = _infer_lambda(W, FG) if inferred else m.lam
    target = RingMatrix.identity(m.r, m.n, W - lam)
    rFG, rGF = FG - target, GF - target
    failures = [("FG", i, j, rFG[i, j]) for i, j in rFG.nonzero_locations()]
    failures += [("GF", i, j, rGF[i, j]) for i, j in rGF.nonzero_locations()]
    return VerifyReport(not failures, lam, inferred, rFG, rGF, failures)


def _ikron(r, M):
    return RingMatrix.identity(r, M.n).kron(M)


def _kroni(M, r):
    return M.kron(RingMatrix.identity(r, M.n))


def mf_tensor(a: MatrixFactorization, b: MatrixFactorization) -> MatrixFactorization:
    """Graded tensor product; potentials and offsets add."""
    if a.n != b.n:
        raise DimensionError(f"dimension mismatch: {a.n} vs {b.n}")
    ra, rb = a.r, b.r
    Fa, Ga = _kroni(a.F, rb), _kroni(a.G, rb)
    Fb, Gb = _ikron(ra, b.F), _ikron(ra, b.G)
    F = block([[Fa, Fb], [-Gb, Ga]])
    G = block([[Ga, -Fb], [Gb, Fa]])
    lam = None if a.lam is None or b.lam is None else a.lam + b.lam
    return MatrixFactorization(2 * ra * rb, F, G, lam)


def telescoping_pairs(W: LaurentPoly, p: Sequence[LaurentPoly], order: Sequence[int] | None = None):
    """Pairs ``(z_i - p_i, g_i)`` with ``sum (z_i - p_i) g_i == W - W(p)``, and ``W(p)``.

    Variables are eliminated in ``order`` (default ascending).  At step i the
    difference ``W(p_1..p_{i-1}, z_i, ..) - W(p_1..p_i, ..)`` vanishes at
    ``z_i = p_i`` and is divided by ``z_i - p_i``.
    """
    n = W.n
    p = list(p)
    if len(p) != n:
        raise DimensionError(f"point has {len(p)} coordinates, potential has {n}")
    order = list(range(n)) if order is None else list(order)
    if sorted(order) != list(range(n)):
        raise ValueError(f"order must be a permutation of 0..{n - 1}")
    pairs = []
    cur = W
    for i in order:
        nxt = lp_subst_point(cur, i, p[i])
        g, exact = lp_div_linear(cur - nxt, i, p[i])
        if not exact:
            raise ArithmeticError(f"division by z{i + 1} - ({p[i]}) was not exact")
        pairs.append(FactorPair(var(n, i) - p[i], g))
        cur = nxt
    return pairs, cur


def mf_from_point(W: LaurentPoly, p: Sequence[LaurentPoly], order: Sequence[int] | None = None) -> MatrixFactorization:
    """Koszul factorization of ``W - W(p)`` built from ``telescoping_pairs``."""
    pairs, lam = telescoping_pairs(W, p, order)
    return mf_koszul(pairs, lam)


# -- serialization -------------------------------------------------------------------

def mf_to_json(m: MatrixFactorization) -> dict:
    out = {
        "r": m.r,
        "F": [[poly_to_json(e) for e in row] for row in m.F.to_lists()],
        "G": [[poly_to_json(e) for e in row] for row in m.G.to_lists()],
    }
    out["lambda"] = None if m.lam is None else poly_to_json(m.lam)
    return out


def mf_from_json(obj) -> MatrixFactorization:
    if isinstance(obj, str):
        obj = json.loads(obj)
    try:
        r = int(obj["r"])
        F = RingMatrix([[poly_from_json(e) for e in row] for row in obj["F"]])
        G = RingMatrix([[poly_from_json(e) for e in row] for row in obj["G"]])
        lam = obj.get("lambda")
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed factorization JSON: {exc}") from None
    return MatrixFactorization(r, F, G, None if lam is None else poly_from_json(lam))


def _qpow_tex(e: Fraction) -> str:
    if e == 1:
        return "q"
    if e == Fraction(1, 2):
        return r"\sqrt{q}"
    if e.denominator == 1:
        return f"q^{{{e.numerator}}}"
    return f"q^{{{e.numerator}/{e.denominator}}}"


def _var_tex(n, i, e) -> str:
    name = "z" if n == 1 else f"z_{i + 1}"
    return name if e == 1 else f"{name}^{{{e}}}"


def _term_tex(n, m, mag: Fraction) -> str:
    num, den = [], []
    if m.qexp > 0:
        num.append(_qpow_tex(m.qexp))
    elif m.qexp < 0:
        den.append(_qpow_tex(-m.qexp))
    for i, e in enumerate(m.zexp):
        if e > 0:
            num.append(_var_tex(n, i, e))
        elif e < 0:
            den.append(_var_tex(n, i, -e))
    c = ""
    if mag != 1 or not (num or den):
        c = str(mag.numerator) if mag.denominator == 1 else rf"\frac{{{mag.numerator}}}{{{mag.denominator}}}"
    numer = "".join(num)
    if den:
        return c + rf"\frac{{{numer or '1'}}}{{{''.join(den)}}}"
    return c + numer


def poly_to_latex(p: LaurentPoly) -> str:
    """Render as in a hand-written display, e.g. ``1-\\frac{q^{1/3}}{z_1}``.

    A multi-term entry whose leading term is negative is printed as ``-(...)``.
    """
    if p.is_zero():
        return "0"
    items = list(p.items())
    if len(items) > 1 and items[0][1] < 0:
        return "-(" + poly_to_latex(-p) + ")"
    s = ""
    for k, (m, c) in enumerate(items):
        body = _term_tex(p.n, m, abs(c))
        if c < 0:
            s += "-" + body
        else:
            s += ("+" if k else "") + body
    return s


def mf_to_latex(m: MatrixFactorization, name: str = "M_0") -> str:
    full = m.full()
    lines = [" & ".join(poly_to_latex(full[i, j]) for j in range(full.cols)) for i in range(full.rows)]
    return (
        f"{name}=\\left(\\begin{{array}}{{{'c' * full.cols}}}\n"
        + " \\\\\n".join(lines)
        + " \\end{array}\\right)"
    )
