"""Exact sparse Laurent polynomials in z_1..z_n and a formal q.

Exponents of q are rationals (``fractions.Fraction`` in lowest terms),
exponents of the z_i are integers, coefficients are exact rationals.
Values are immutable; every operation returns a new polynomial.

Monomials are totally ordered lexicographically on ``(qexp, zexp)``.  That
order fixes printing and the canonical JSON form::

    {"n": 2, "terms": [{"coeff": "-1/1", "qexp": "1/3", "zexp": [0, 0]}, ...]}
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import kernels

__all__ = [
    "DimensionError",
    "NotAUnitError",
    "NonLaurentError",
    "Monomial",
    "LaurentPoly",
    "lp_add",
    "lp_mul",
    "lp_eval",
    "lp_subst_point",
    "lp_div_linear",
    "zero",
    "one",
    "const",
    "var",
    "qpow",
    "monomial",
    "poly_to_json",
    "poly_from_json",
    "format_fraction",
    "parse_fraction",
]


class DimensionError(ValueError):
    """Operands live in rings with different numbers of z variables."""


class NotAUnitError(ValueError):
    """A value that must be a single invertible term is not."""


class NonLaurentError(ArithmeticError):
    """A quotient would leave the Laurent ring."""


def format_fraction(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_fraction(s) -> Fraction:
    if isinstance(s, (int, Fraction)):
        return Fraction(s)
    if not isinstance(s, str):
        raise TypeError(f"expected 'num/den' string, got {type(s).__name__}")
    return Fraction(s.strip())


@dataclass(frozen=True, order=False)
class Monomial:
    """``q**qexp * z**zexp``.  ``qexp`` is a Fraction, ``zexp`` an int tuple."""

    qexp: Fraction
    zexp: tuple

    def __post_init__(self):
        object.__setattr__(self, "qexp", Fraction(self.qexp))
        object.__setattr__(self, "zexp", tuple(int(e) for e in self.zexp))

    @property
    def n(self) -> int:
        return len(self.zexp)

    def sort_key(self):
        return (self.qexp, self.zexp)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def _key(self) -> tuple:
        return (self.qexp.numerator, self.qexp.denominator) + self.zexp

    @classmethod
    def _from_key(cls, key) -> "Monomial":
        return cls(Fraction(key[0], key[1]), key[2:])


def _sort_key(key):
    return (Fraction(key[0], key[1]), key[2:])


class LaurentPoly:
    """Immutable sparse Laurent polynomial.

    Construct through the helpers (``var``, ``qpow``, ``const``, ``monomial``)
    or from a mapping ``{Monomial: coeff}``.  Equality is equality of the
    normalized term maps.
    """

    __slots__ = ("_n", "_terms", "_hash")

    def __init__(self, n: int, terms: Mapping | None = None):
        if int(n) < 0:
            raise ValueError("dimension must be non-negative")
        self._n = int(n)
        d = {}
        if terms:
            for m, c in terms.items():
                if not isinstance(m, Monomial):
                    m = Monomial(*m)
                if m.n != self._n:
                    raise DimensionError(f"monomial of dimension {m.n} in ring of dimension {self._n}")
                if c:
                    k = m._key()
                    v = d.get(k, 0) + kernels.normalize_coeff(c)
                    if v:
                        d[k] = kernels.normalize_coeff(v)
                    else:
                        d.pop(k, None)
        self._terms = d
        self._hash = None

    @classmethod
    def _raw(cls, n: int, terms: dict) -> "LaurentPoly":
        p = cls.__new__(cls)
        p._n = n
        p._terms = terms
        p._hash = None
        return p

    # -- basic accessors ---------------------------------------------------
    @property
    def n(self) -> int:
        return self._n

    def items(self):
        """(Monomial, Fraction) pairs in monomial order."""
        for k in sorted(self._terms, key=_sort_key):
            yield Monomial._from_key(k), Fraction(self._terms[k])

    @property
    def terms(self) -> dict:
        return dict(self.items())

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_z_free(self) -> bool:
        return all(not any(k[2:]) for k in self._terms)

    def is_unit(self) -> bool:
        return len(self._terms) == 1

    def coeff(self, qexp, zexp) -> Fraction:
        m = Monomial(qexp, zexp)
        return Fraction(self._terms.get(m._key(), 0))

    def single_term(self):
        if len(self._terms) != 1:
            raise NotAUnitError(f"{self} is not a single term")
        (k, c), = self._terms.items()
        return Monomial._from_key(k), Fraction(c)

    # -- arithmetic ------------------------------------------------------------
    def _check(self, other):
        if not isinstance(other, LaurentPoly):
            other = const(self._n, other)
        if other._n != self._n:
            raise DimensionError(f"dimension mismatch: {self._n} vs {other._n}")
        return other

    def __add__(self, other):
        other = self._check(other)
        return LaurentPoly._raw(self._n, kernels.add_terms(self._terms, other._terms))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        return LaurentPoly._raw(self._n, kernels.add_terms(self._terms, other._terms, -1))

    def __rsub__(self, other):
        return self._check(other) - self

    def __neg__(self):
        return LaurentPoly._raw(self._n, {k: -c for k, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return LaurentPoly._raw(self._n, kernels.scale_terms(self._terms, other))
        other = self._check(other)
        return LaurentPoly._raw(self._n, kernels.mul_terms(self._terms, other._terms))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            m, c = self.single_term()
            inv = Monomial(-m.qexp, tuple(-e for e in m.zexp))
            return LaurentPoly(self._n, {inv: 1 / c}) ** (-k)
        out = one(self._n)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = const(self._n, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._n == other._n and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._n, frozenset(self._terms.items())))
        return self._hash

    # -- display ---------------------------------------------------------------
    def __repr__(self):
        return f"LaurentPoly({self._n}, {self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for m, c in self.items():
            factors = []
            if m.qexp:
                factors.append("q" if m.qexp == 1 else f"q^({m.qexp})")
            for i, e in enumerate(m.zexp):
                name = "z" if self._n == 1 else f"z{i + 1}"
                if e == 1:
                    factors.append(name)
                elif e:
                    factors.append(f"{name}^{e}")
            mono = "*".join(factors)
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            parts.append(("-" if c < 0 else "+", body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s


# -- constructors --------------------------------------------------------------

def zero(n: int) -> LaurentPoly:
    return LaurentPoly._raw(n, {})


def const(n: int, c) -> LaurentPoly:
    return monomial(n, c)


def one(n: int) -> LaurentPoly:
    return const(n, 1)


def monomial(n: int, coeff=1, qexp=0, zexp=None) -> LaurentPoly:
    zexp = tuple(zexp) if zexp is not None else (0,) * n
    return LaurentPoly(n, {Monomial(qexp, zexp): coeff})


def var(n: int, i: int) -> LaurentPoly:
    """The variable z_{i+1} (0-based index ``i``)."""
    if not 0 <= i < n:
        raise IndexError(f"variable index {i} out of range for n={n}")
    e = [0] * n
    e[i] = 1
    return monomial(n, 1, 0, e)


def qpow(n: int, e) -> LaurentPoly:
    return monomial(n, 1, e)


# -- ring operations ------------------------------------------------------------

def lp_add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    if a.n != b.n:
        raise DimensionError(f"dimension mismatch: {a.n} vs {b.n}")
    return a + b


def lp_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    if a.n != b.n:
        raise DimensionError(f"dimension mismatch: {a.n} vs {b.n}")
    return a * b


def lp_eval(p: LaurentPoly, qval: float, z: Sequence[complex]) -> complex:
    """Evaluate at a real ``qval`` in (0, 1] and a nonzero complex point ``z``.

    Rational powers of q use the positive real root, matching q = exp(-t).
    """
    if not (0 < qval <= 1):
        raise ValueError(f"qval must lie in (0, 1], got {qval}")
    z = [complex(v) for v in z]
    if len(z) != p.n:
        raise DimensionError(f"point has {len(z)} coordinates, ring has {p.n}")
    if any(v == 0 for v in z):
        raise ValueError("z coordinates must be nonzero")
    logq = math.log(qval)
    total = 0j
    for k, c in p._terms.items():
        term = complex(float(c) * math.exp(logq * k[0] / k[1]))
        for zi, e in zip(z, k[2:]):
            if e:
                term *= zi ** e
        total += term
    return total


def _substitute_unit(p: LaurentPoly, i: int, value: LaurentPoly) -> LaurentPoly:
    vm, vc = value.single_term()
    if vm.zexp[i]:
        raise NonLaurentError(f"substituted value {value} involves z{i + 1} itself")
    out = {}
    for k, c in p._terms.items():
        e = k[2 + i]
        if e == 0:
            out[k] = out.get(k, 0) + c
            continue
        # z_i^e -> (vc * q^vq * z^vz)^e
        qe = Fraction(k[0], k[1]) + vm.qexp * e
        z = list(k[2:])
        z[i] = 0
        for j, vz in enumerate(vm.zexp):
            z[j] += vz * e
        nk = (qe.numerator, qe.denominator) + tuple(z)
        out[nk] = out.get(nk, 0) + c * vc ** e
    return LaurentPoly._raw(p.n, {k: kernels.normalize_coeff(c) for k, c in out.items() if c})


def lp_subst_point(p: LaurentPoly, i: int, value: LaurentPoly) -> LaurentPoly:
    """Substitute z_{i+1} := value, where ``value`` is a single invertible term.

    The ring dimension is unchanged; z_{i+1} simply drops out of the support.
    Substituting z_i by itself is the identity.
    """
    if value.n != p.n:
        raise DimensionError(f"dimension mismatch: {p.n} vs {value.n}")
    if not value.is_unit():
        raise NotAUnitError(f"substituted value must be a single term, got {value}")
    vm, vc = value.single_term()
    if vm.zexp[i]:
        if vc == 1 and vm.qexp == 0 and vm.zexp == var(p.n, i).single_term()[0].zexp:
            return p
        raise NonLaurentError(f"substituted value {value} involves z{i + 1} itself")
    return _substitute_unit(p, i, value)


def lp_div_linear(p: LaurentPoly, i: int, root: LaurentPoly) -> tuple[LaurentPoly, bool]:
    """Divide ``p`` by ``(z_{i+1} - root)``.

    Returns ``(quotient, exact)``.  When ``exact`` is true,
    ``(z_{i+1} - root) * quotient == p``.  Otherwise the quotient is the one
    obtained by discarding the remainder of the synthetic division.

    Negative powers of z_{i+1} are cleared first by multiplying through by a
    power of z_{i+1}; the division itself is Horner's scheme in z_{i+1} with
    coefficients in the Laurent ring of the remaining variables.
    """
    if root.n != p.n:
        raise DimensionError(f"dimension mismatch: {p.n} vs {root.n}")
    if not root.is_unit():
        raise NotAUnitError(f"root must be a single invertible term, got {root}")
    rm, _ = root.single_term()
    if rm.zexp[i]:
        raise NonLaurentError(f"root {root} involves z{i + 1}; the quotient is not Laurent")
    n = p.n
    if p.is_zero():
        return zero(n), True
    # split p by the power of z_i: p = sum_e c_e z_i^e, c_e free of z_i
    by_deg = {}
    for k, c in p._terms.items():
        e = k[2 + i]
        kk = list(k)
        kk[2 + i] = 0
        by_deg.setdefault(e, {})[tuple(kk)] = c
    lo, hi = min(by_deg), max(by_deg)
    shift = -lo if lo < 0 else 0
    top = hi + shift
    coeffs = [LaurentPoly._raw(n, by_deg.get(d - shift, {})) for d in range(top + 1)]
    # Horner: q_{d-1} = c_d + root * q_d
    quot = [None] * top
    acc = zero(n)
    for d in range(top, 0, -1):
        acc = coeffs[d] + root * acc if d != top else coeffs[d]
        quot[d - 1] = acc
    remainder = coeffs[0] + root * acc if top > 0 else coeffs[0]
    zi = var(n, i)
    q = zero(n)
    for d in range(top - 1, -1, -1):
        q = q * zi + quot[d]
    if shift:
        q = q * zi ** (-shift)
    return q, remainder.is_zero()


# -- JSON ----------------------------------------------------------------------

def poly_to_json(p: LaurentPoly) -> dict:
    return {
        "n": p.n,
        "terms": [
            {"coeff": format_fraction(c), "qexp": format_fraction(m.qexp), "zexp": list(m.zexp)}
            for m, c in p.items()
        ],
    }


def poly_from_json(obj) -> LaurentPoly:
    if isinstance(obj, str):
        obj = json.loads(obj)
    try:
        n = int(obj["n"])
        terms = obj["terms"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed polynomial JSON: {exc}") from None
    d = {}
    for t in terms:
        m = Monomial(parse_fraction(t["qexp"]), tuple(t["zexp"]))
        if m.n != n:
            raise DimensionError(f"term {t} does not have dimension {n}")
        if m in d:
            raise ValueError(f"duplicate monomial in JSON: {t}")
        d[m] = parse_fraction(t["coeff"])
    return LaurentPoly(n, d)


def lift(p: LaurentPoly, n: int, index_map: Iterable[int], qscale=1) -> LaurentPoly:
    """Embed ``p`` into dimension ``n``: its variable j becomes ``index_map[j]``.

    ``qscale`` rescales the q-exponents (q -> q**qscale).
    """
    index_map = list(index_map)
    if len(index_map) != p.n:
        raise DimensionError("index map must cover every variable")
    qscale = Fraction(qscale)
    out = {}
    for m, c in p.items():
        z = [0] * n
        for j, e in zip(index_map, m.zexp):
            z[j] += e
        out[Monomial(m.qexp * qscale, tuple(z))] = c
    return LaurentPoly(n, out)
