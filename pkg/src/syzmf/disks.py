"""Disk catalogues: the four P^1 disks and the P^2 permissible-pair enumerator.

P^2 path model
--------------
The deformed Lagrangian over [0, 3]^2 (units of t/3) is discretized on a
half-unit grid, coordinates 0..6 per axis.  Along each axis a coordinate
``s`` stands for

* ``s <= 4``: a point on one of two sheets over the segment, at distance
  ``|2 - s|`` (half-units) from the pole ``s = 2``.  The intersection
  points sit at ``s = 1`` (label ``-``) and ``s = 3`` (label ``+``).
* ``4 <= s <= 6``: the circle of the Clifford torus over ``x = t/3``,
  angle ``pi * (s - 4)``.

The values in ``J = {0, 4, 6}`` all describe the same points of L (the
sheet ends and the circle base point), so a path may jump between them.

Steps of the upper path are tagged with the component they trace:
``H``/``V`` for the two P^1 lines through the sheets, ``F`` for the
fibration over {t/3} x [0, t/3], ``I`` for the diagonal (-1, -1) walk in
region 0 that runs into the line at infinity.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .areas import AffineArea
from .syz import FiberwiseEntry, FourierTerm

__all__ = [
    "P1_LABELS",
    "P2_LABELS",
    "DiskClass",
    "PermissiblePair",
    "Catalogue",
    "p1_catalogue",
    "p2_enumerate",
    "p2_catalogue",
    "catalogue_for",
    "psi_matrix",
    "stokes_area",
    "catalogue_to_json",
    "parse_pair",
]

P1_LABELS = ("+", "-")
P2_LABELS = ("++", "--", "-+", "+-")

COMPONENT_DIRECTIONS = {
    "line-H": (1, 0),
    "zero-area": (1, 0),
    "line-V": (0, 1),
    "fibration-zero-area": (0, 1),
    "maslov-two-infinity": (-1, -1),
}

MAX_HOPS = 8


@dataclass(frozen=True)
class DiskClass:
    name: str
    p: str
    q: str
    v: int
    area: AffineArea
    sign: int

    @property
    def vvec(self):
        return (self.v,)

    def to_json(self):
        return {"p": self.p, "q": self.q, "v": [self.v], "area": self.area.to_json(), "sign": self.sign, "components": []}


@dataclass(frozen=True)
class PermissiblePair:
    p: str
    q: str
    v: tuple
    area: AffineArea
    sign: int
    components: tuple
    kind: str = ""
    gamma_minus: tuple = ()
    gamma_plus: tuple = field(default=(), compare=False)

    def __post_init__(self):
        if len(self.components) not in (1, 3):
            raise ValueError("a permissible pair has one or three components")

    @property
    def vvec(self):
        return self.v

    def directions(self):
        return [COMPONENT_DIRECTIONS[c] for c in self.components]

    def to_json(self):
        return {
            "p": self.p,
            "q": self.q,
            "v": list(self.v),
            "area": self.area.to_json(),
            "sign": self.sign,
            "components": list(self.components),
        }


class Catalogue(list):
    """Disk records of one surface together with the data needed to assemble Ψ."""

    def __init__(self, surface, n, labels, u_bound, records=()):
        super().__init__(records)
        self.surface = surface
        self.n = n
        self.labels = tuple(labels)
        self.u_bound = Fraction(u_bound)

    def psi(self):
        return psi_matrix(self.surface, self)


# -- P^1 ---------------------------------------------------------------------------

def p1_catalogue() -> Catalogue:
    """The four disks for the Clifford circle of P^1 over U = (0, t/2)."""
    A = AffineArea
    half = Fraction(1, 2)
    return Catalogue(
        "P1",
        1,
        P1_LABELS,
        half,
        [
            DiskClass("D1", "+", "-", 1, A(0, (1,)), 1),
            DiskClass("D2", "+", "-", 0, A(half, (0,)), -1),
            DiskClass("D3", "-", "+", 0, A(0, (0,)), 1),
            DiskClass("D4", "-", "+", -1, A(half, (-1,)), -1),
        ],
    )


# -- P^2 path model ------------------------------------------------------------------

J = frozenset((0, 4, 6))
POS = {"-": 1, "+": 3}
POLE = 2

GAMMA_MINUS = (
    ("const", (1, 0)),
    ("const", (-1, 0)),
    ("const", (0, 1)),
    ("const", (0, -1)),
    ("seg", (1, 0)),
    ("seg", (-1, 0)),
    ("seg", (0, 1)),
    ("seg", (0, -1)),
)

# one-component routes: (net pole crossings, circle winding) -> P^1 disk, v along the line
P1_ROUTES = {
    (1, 0): ("D1", 1),
    (-1, 0): ("D3", 0),
    (0, -1): ("D2", 0),
    (0, 1): ("D4", -1),
}

# signs fixed by hand, keyed by (p, q, v)
P2_SIGNS = {
    ("++", "-+", (1, 0)): 1,
    ("++", "-+", (0, 0)): -1,
    ("++", "+-", (0, 1)): 1,
    ("++", "+-", (-1, 0)): -1,
    ("--", "-+", (0, 0)): -1,
    ("--", "-+", (0, -1)): 1,
    ("--", "+-", (0, 0)): 1,
    ("--", "+-", (-1, 0)): -1,
    ("-+", "++", (0, 0)): 1,
    ("-+", "++", (-1, 0)): -1,
    ("-+", "--", (0, 1)): -1,
    ("-+", "--", (-1, 0)): 1,
    ("+-", "++", (0, 0)): 1,
    ("+-", "++", (0, -1)): -1,
    ("+-", "--", (1, 0)): 1,
    ("+-", "--", (0, 0)): -1,
}

ALLOWED_TAGS = (frozenset("H"), frozenset("V"), frozenset("HFI"))


def _anchor(label):
    return (POS[label[0]], POS[label[1]])


def _moves(a):
    x, y = a
    for k in (0, 1):
        for d in (-1, 1):
            b = list(a)
            b[k] += d
            if 0 <= b[k] <= 6:
                yield ("step", k), tuple(b)
    if 4 <= x <= 6 and 4 <= y <= 6:
        for dx in (-1, 1):
            for dy in (-1, 1):
                b = (x + dx, y + dy)
                if 4 <= b[0] <= 6 and 4 <= b[1] <= 6:
                    yield ("diag", (dx, dy)), b


def _jumps(a):
    for k in (0, 1):
        if a[k] in J:
            for s in sorted(J - {a[k]}):
                b = list(a)
                b[k] = s
                yield ("jump", k), tuple(b)


def _tag(move, a, b):
    if move[0] == "diag":
        return "I" if move[1] == (-1, -1) else None
    k = move[1]
    fixed = a[1 - k]
    if fixed in (1, 3):
        return "H" if k == 0 else "V"
    if fixed == POLE:
        return None
    # the only other stratum an axis step may trace is the fibration
    if k == 1 and max(a[k], b[k]) <= 4:
        return "F"
    return None


def _tag_ok(tags):
    return any(tags <= s for s in ALLOWED_TAGS)


def _upper_paths(start, end, max_hops=MAX_HOPS):
    """Simple lattice paths from ``start`` to ``end`` with at most ``max_hops`` real steps.

    Jumps inside J are free but never consecutive.  Paths whose component
    tags cannot belong to an allowed decomposition are pruned early.
    """
    found = []
    path = []
    visited = {start}

    def dfs(cur, hops, last_jump, tags):
        if cur == end and path:
            found.append(tuple(path))
            return
        if hops == max_hops:
            return
        cands = list(_moves(cur))
        if not last_jump:
            cands += list(_jumps(cur))
        for move, nxt in cands:
            if nxt in visited:
                continue
            if move[0] == "jump":
                t = "jump"
                ntags = tags
            else:
                t = _tag(move, cur, nxt)
                if t is None:
                    continue
                ntags = tags | {t}
                if not _tag_ok(ntags):
                    continue
            visited.add(nxt)
            path.append((move, cur, nxt, t))
            dfs(nxt, hops + (move[0] != "jump"), move[0] == "jump", ntags)
            path.pop()
            visited.discard(nxt)

    dfs(start, 0, False, frozenset())
    return found


def _sgn(c):
    return 1 if c == "+" else -1


def _compatible(g, p, q):
    """γ₋ must run from q to p the way the intersection points sit in the fiber."""
    d = tuple((_sgn(q[k]) - _sgn(p[k])) // 2 for k in (0, 1))
    kind, dirn = g
    if kind == "const":
        return d == dirn
    k = 0 if dirn[0] else 1
    return d[k] != dirn[k]


def _sheet_image(s):
    return abs(POLE - s)


def _point_image(s):
    return (abs(POLE - s), 0) if s <= 4 else (2, (s - 4) % 2)


def _line_stats(steps):
    """(pole crossings, circle winding, sheet image segments) of one coordinate."""
    pole = winding2 = 0
    sheet = []
    for a, b in steps:
        if max(a, b) <= 4:
            sheet.append((_sheet_image(a), _sheet_image(b)))
        else:
            winding2 += b - a
        if (a, b) == (POLE, POLE + 1):
            pole += 1
        elif (a, b) == (POLE, POLE - 1):
            pole -= 1
    return pole, winding2, sheet


def _cancels(segs):
    cnt = Counter(segs)
    return all(cnt[(b, a)] == m for (a, b), m in cnt.items())


def _runs(steps):
    runs = []
    for a, b in steps:
        d = (b > a) - (b < a)
        if runs and runs[-1][2] == d and runs[-1][1] == a:
            runs[-1] = (runs[-1][0], b, d)
        else:
            runs.append((a, b, d))
    return runs


def _one_component(path, g, p, q, line):
    k = 0 if line == "H" else 1
    steps = [(a[k], b[k]) for _, a, b, t in path if t == line]
    pole, w2, _ = _line_stats(steps)
    if w2 % 2:
        return None
    route = P1_ROUTES.get((pole, w2 // 2))
    if route is None:
        return None
    name, vk = route
    v = (0, 0) if g[0] == "const" else g[1]
    # D2 is the disk with boundary on L alone; it never pairs with a fiber path
    if name == "D2" or v[k] != vk:
        return None
    if name == "D1" and (q[k], p[k]) != ("-", "+"):
        return None
    if name in ("D3", "D4") and (q[k], p[k]) != ("+", "-"):
        return None
    return name, ("line-" + line,)


def _three_components(path, g, p, q):
    for move, a, b, _ in path:
        if move[0] != "jump" and (POLE in a or POLE in b):
            return None
    # sheet switches of a single coordinate go one way only (the fixed smoothing)
    if any(q[k] == "+" and p[k] == "-" for k in (0, 1)):
        return None
    diag = [(a, b) for _, a, b, t in path if t == "I"]
    if diag != [((6, 6), (5, 5)), ((5, 5), (4, 4))]:
        return None
    fib = []
    fib_line = []
    for _, a, b, t in path:
        if t == "F":
            u1 = 0 if a[0] in J else a[0]
            fib.append(((u1, _sheet_image(a[1])), (u1, _sheet_image(b[1]))))
            fib_line.append((_sheet_image(a[1]), _sheet_image(b[1])))
    if not _cancels(fib):
        return None
    runs = _runs(fib_line)
    if len(runs) != 2 or runs[0][:2] != runs[1][1::-1]:
        return None
    steps = [(a[0], b[0]) for _, a, b, t in path if t == "H"]
    pole, w2, sheet = _line_stats(steps)
    if w2 % 2 or not _cancels(sheet):
        return None
    v = (0, 0) if g[0] == "const" else g[1]
    key = (pole, w2 // 2)
    if key == (0, 0) and v[0] == 0:
        return "zero", ("zero-area", "fibration-zero-area", "maslov-two-infinity")
    if key == (0, 1) and v[0] == -1:
        return "D4", ("line-H", "fibration-zero-area", "maslov-two-infinity")
    return None


def _classify(path, g, p, q):
    if not _compatible(g, p, q):
        return None
    tags = {t for *_, t in path if t != "jump"}
    comps = tags | {"H" if g[1][0] else "V"}
    if len(comps) == 1:
        return _one_component(path, g, p, q, comps.pop())
    if comps == {"H", "F", "I"}:
        return _three_components(path, g, p, q)
    return None


def _boundary_chain(path):
    segs = [
        (_point_image(a[0]) + _point_image(a[1]), _point_image(b[0]) + _point_image(b[1]))
        for move, a, b, _ in path
        if move[0] != "jump"
    ]
    return frozenset(Counter(segs).items())


def _winding(path):
    w2 = [0, 0]
    for move, a, b, _ in path:
        if move[0] == "jump":
            continue
        for k in (0, 1):
            if min(a[k], b[k]) >= 4 and a[k] != b[k]:
                w2[k] += b[k] - a[k]
    return tuple(w // 2 for w in w2)


def stokes_area(path, v) -> AffineArea:
    """Area of a pair from its boundary data alone.

    The circle contributes ``t/3`` per unit of winding, the fiber path
    ``<x, v>``, and every crossing of a toric divisor ``t`` (only the line at
    infinity, met ``max(0, -n_1, -n_2)`` times for the total class
    ``n = w + v``).
    """
    w = _winding(path)
    nvec = tuple(a + b for a, b in zip(w, v))
    crossings = max(0, -nvec[0], -nvec[1])
    return AffineArea(Fraction(sum(w), 3) + crossings, v)


def _area(kind, comps, v):
    third = Fraction(1, 3)
    if len(comps) == 1:
        return {
            "D1": AffineArea(0, v),
            "D3": AffineArea(0, (0, 0)),
            "D4": AffineArea(third, v),
        }[kind]
    # the Maslov-two component contributes t/3, the fibration nothing
    line = AffineArea(0, (0, 0)) if kind == "zero" else AffineArea(third, v)
    return line + AffineArea(third, (0, 0))


@lru_cache(maxsize=None)
def _enumerate(p, q):
    if p == q:
        return ()
    found = {}
    for path in _upper_paths(_anchor(q), _anchor(p)):
        for g in GAMMA_MINUS:
            r = _classify(path, g, p, q)
            if r is None:
                continue
            key = (g, _boundary_chain(path))
            if key not in found:
                found[key] = (r, path)
    pairs = []
    for (g, _), ((kind, comps), path) in found.items():
        v = (0, 0) if g[0] == "const" else g[1]
        area = _area(kind, comps, v)
        sign = P2_SIGNS.get((p, q, v))
        if sign is None:
            raise AssertionError(f"no sign convention for ({p}, {q}, v={v})")
        pairs.append(PermissiblePair(p, q, v, area, sign, comps, kind, g, path))
    pairs.sort(key=lambda r: r.v)
    return tuple(pairs)


def p2_enumerate(p: str, q: str) -> list:
    """Permissible pairs (γ₊, γ₋) from q to p, up to reparametrization."""
    for lab in (p, q):
        if lab not in P2_LABELS:
            raise ValueError(f"unknown intersection point {lab!r}; choose from {', '.join(P2_LABELS)}")
    return list(_enumerate(p, q))


def p2_catalogue() -> Catalogue:
    cat = Catalogue("P2", 2, P2_LABELS, Fraction(1, 3))
    for p in P2_LABELS:
        for q in P2_LABELS:
            cat.extend(p2_enumerate(p, q))
    return cat


def catalogue_for(surface: str) -> Catalogue:
    key = surface.lower()
    if key == "p1":
        return p1_catalogue()
    if key == "p2":
        return p2_catalogue()
    raise ValueError(f"no disk catalogue for surface {surface!r}")


def psi_matrix(surface, catalogue):
    """Grid of fiberwise entries Ψ^{p,q}, rows and columns in label order."""
    labels = P1_LABELS if str(surface).lower() == "p1" else P2_LABELS
    n = 1 if str(surface).lower() == "p1" else 2
    idx = {lab: i for i, lab in enumerate(labels)}
    cells = [[[] for _ in labels] for _ in labels]
    for rec in catalogue:
        if rec.p == rec.q:
            continue
        cells[idx[rec.p]][idx[rec.q]].append(FourierTerm(rec.sign, rec.vvec, rec.area))
    return [[FiberwiseEntry(n, c) for c in row] for row in cells]


def catalogue_to_json(records, labels) -> list:
    idx = {lab: i for i, lab in enumerate(labels)}
    recs = sorted(records, key=lambda r: (idx[r.p], idx[r.q], tuple(r.vvec)))
    return [r.to_json() for r in recs]


def parse_pair(text: str, labels=P2_LABELS):
    parts = [s.strip() for s in str(text).split(",")]
    if len(parts) != 2 or any(s not in labels for s in parts):
        raise ValueError(f"pair must be two labels from {', '.join(labels)} separated by a comma, got {text!r}")
    return parts[0], parts[1]
