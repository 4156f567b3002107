"""Exact geometry of the coamoeba as a zonotope arrangement on the torus.

Angles live in "turns": rationals modulo 1, one turn being a full circle.
Every predicate here is decided with exact rational (internally integer)
arithmetic; there is no floating point anywhere.

Two independent membership routes are provided.  ``membership`` decides the
circle-configuration predicate: a point belongs to the coamoeba unless its
image angles, together with 0, fit inside an open half-circle.  The oracle
``membership_by_zonotope`` instead tests the point against the explicit
arrangement of open zonotopes whose complement the coamoeba is.  The two must
agree on every input.

Both routes analyze the model with its exponent matrix replaced by A*H,
i.e. G^-1 * D, which right-multiplication by the unimodular H makes
legitimate: it changes the hypersurface by an equivariant isomorphism of the
torus and leaves every quantity computed here unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations, product
from math import ceil, floor, gcd, lcm

from . import exactmath
from .exactmath import SmithDecomposition
from .model import NormalizedModel, delta

Turn = Fraction


def as_turn(q) -> Fraction:
    """Canonical representative in [0, 1)."""
    return Fraction(q) % 1


class Region(Enum):
    COAMOEBA = "coamoeba"
    COMPLEMENT = "complement"


# ---------------------------------------------------------------------------
# Zonotopes


@dataclass(frozen=True)
class Zonotope:
    """Minkowski sum of centered segments, with its facet description.

    Facets are pairs (normal, offset) with integer primitive normal; a point
    p is strictly inside iff |normal . (p - center)| < offset for every facet.
    """

    center: tuple[Fraction, ...]
    generators: tuple[tuple[Fraction, ...], ...]
    facets: tuple[tuple[tuple[int, ...], Fraction], ...]


def _primitive_normal(int_vectors, n: int) -> tuple[int, ...] | None:
    """Primitive integer vector orthogonal to n-1 integer vectors.

    Generalized cross product: component i is (-1)^i times the minor with
    column i deleted.  Returns None when the vectors do not span a hyperplane.
    """
    nu = []
    for i in range(n):
        sub = [[v[j] for j in range(n) if j != i] for v in int_vectors]
        nu.append((-1) ** i * exactmath.det(sub))
    if all(x == 0 for x in nu):
        return None
    g = 0
    for x in nu:
        g = gcd(g, x)
    nu = [x // g for x in nu]
    lead = next(x for x in nu if x != 0)
    if lead < 0:
        nu = [-x for x in nu]
    return tuple(nu)


def _facets(generators) -> tuple[tuple[tuple[int, ...], Fraction], ...]:
    """H-representation by enumerating (n-1)-subsets of generators.

    Adequate for n <= 4; the subset count grows too fast beyond that.
    """
    n = len(generators[0])
    int_gens = []
    for g in generators:
        scale = lcm(*(x.denominator for x in g)) if n > 0 else 1
        int_gens.append(tuple(int(x * scale) for x in g))
    normals = set()
    for subset in combinations(int_gens, n - 1):
        nu = _primitive_normal(subset, n)
        if nu is not None:
            normals.add(nu)
    facets = []
    for nu in sorted(normals):
        offset = Fraction(0)
        for g in generators:
            offset += abs(sum(c * x for c, x in zip(nu, g)))
        offset /= 2
        if offset == 0:
            raise ValueError("generators do not span; zonotope is degenerate")
        facets.append((nu, offset))
    return tuple(facets)


def standard_zonotope(n: int) -> Zonotope:
    """The forbidden-configuration zonotope for the all-plus linear model.

    Centered at the origin, generated by the n+1 segments with directions
    e_1/2, ..., e_n/2 and -(1,...,1)/2 (in turns).  Its interior equals the
    union over phi in (-1/2, 0) of the open cubes (phi, phi + 1/2)^n.
    """
    if n < 1:
        raise ValueError("dimension must be >= 1")
    half = Fraction(1, 2)
    gens = [tuple(half if j == i else Fraction(0) for j in range(n)) for i in range(n)]
    gens.append(tuple(-half for _ in range(n)))
    gens = tuple(gens)
    return Zonotope((Fraction(0),) * n, gens, _facets(gens))


# ---------------------------------------------------------------------------
# The arrangement


@dataclass(frozen=True)
class ZonotopeArrangement:
    """d_1...d_n open zonotopes in the unit torus, all translates of `shape`.

    The index set Omega is the product of range(d_i); the zonotope at index
    alpha is `shape` translated to center(alpha).  `delta_g` is the {0,1}
    lift of G * delta(epsilon) mod 2, and `extents` the per-axis total widths
    of the shape, in turns.
    """

    n: int
    D: tuple[int, ...]
    G: tuple[tuple[int, ...], ...]
    delta_g: tuple[int, ...]
    shape: Zonotope
    extents: tuple[Fraction, ...]

    def omega(self):
        """Indices alpha in lexicographic order."""
        return product(*(range(d) for d in self.D))

    def size(self) -> int:
        out = 1
        for d in self.D:
            out *= d
        return out

    def center(self, alpha) -> tuple[Fraction, ...]:
        self._check_index(alpha)
        return tuple(
            Fraction(self.delta_g[i], 2 * self.D[i]) + Fraction(alpha[i], self.D[i])
            for i in range(self.n)
        )

    def _check_index(self, alpha) -> None:
        if len(alpha) != self.n or any(
            not 0 <= a < d for a, d in zip(alpha, self.D)
        ):
            raise IndexError(f"{alpha} not in Omega for D={self.D}")


def effective_matrix(model: NormalizedModel, dec: SmithDecomposition):
    """A * H = G^-1 * D, the exponent matrix actually analyzed."""
    return exactmath.mat_mul([list(r) for r in model.A], dec.H)


def arrangement(model: NormalizedModel, dec: SmithDecomposition) -> ZonotopeArrangement:
    """Zonotope-arrangement description of the coamoeba complement.

    The standard zonotope is deformed by G, scaled per axis by 1/d_i, and
    replicated over the index set Omega; centers sit at
    delta_g/(2 d) + alpha/d componentwise.
    """
    n = model.n
    g_mat = dec.G
    dlt = delta(model.epsilon)
    delta_g = tuple(sum(g_mat[i][k] * dlt[k] for k in range(n)) % 2 for i in range(n))
    std = standard_zonotope(n)
    gens = tuple(
        tuple(
            sum(Fraction(g_mat[i][k]) * v[k] for k in range(n)) / dec.D[i]
            for i in range(n)
        )
        for v in std.generators
    )
    shape = Zonotope((Fraction(0),) * n, gens, _facets(gens))
    extents = tuple(sum(abs(v[i]) for v in gens) for i in range(n))
    return ZonotopeArrangement(
        n=n,
        D=tuple(dec.D),
        G=tuple(tuple(row) for row in g_mat),
        delta_g=delta_g,
        shape=shape,
        extents=extents,
    )


# ---------------------------------------------------------------------------
# Membership, route 1: circle configurations


def max_cyclic_gap(points) -> Fraction:
    """Largest gap between consecutive points of the circle R/Z, in turns."""
    pts = sorted({as_turn(p) for p in points})
    if len(pts) == 1:
        return Fraction(1)
    best = pts[0] + 1 - pts[-1]
    for a, b in zip(pts, pts[1:]):
        best = max(best, b - a)
    return best


def membership(model: NormalizedModel, dec: SmithDecomposition, theta) -> Region:
    """Coamoeba membership via the half-circle criterion.

    Computes phi = (A*H) theta - delta/2 componentwise; the point is in the
    complement exactly when {0, phi_1, ..., phi_n} fits in an open
    half-circle, i.e. when the largest cyclic gap exceeds 1/2 a turn.
    """
    theta = tuple(Fraction(t) for t in theta)
    if len(theta) != model.n:
        raise ValueError("theta has wrong length")
    a_eff = effective_matrix(model, dec)
    dlt = delta(model.epsilon)
    phi = [
        sum(a_eff[i][k] * theta[k] for k in range(model.n)) - Fraction(dlt[i], 2)
        for i in range(model.n)
    ]
    gap = max_cyclic_gap([Fraction(0), *phi])
    return Region.COMPLEMENT if gap > Fraction(1, 2) else Region.COAMOEBA


# ---------------------------------------------------------------------------
# Membership, route 2: the arrangement itself


class ScaledLocator:
    """Strict point-in-arrangement queries in integer arithmetic.

    Coordinates are scaled by `scale`, chosen so the zonotope centers, the
    per-axis half-widths and all facet thresholds become integers.  Centers
    form per-axis lattices offset + t * step; `locate` returns the t-tuple of
    the unique open zonotope lift strictly containing the point, or None.
    """

    def __init__(self, arr: ZonotopeArrangement, extra: int = 1):
        base = 1
        for d in arr.D:
            base = lcm(base, 2 * d)
        for _, off in arr.shape.facets:
            base = lcm(base, off.denominator)
        for ext in arr.extents:
            base = lcm(base, (ext / 2).denominator)
        self.arr = arr
        self.scale = lcm(base, extra)
        w = self.scale
        self.step = [w // d for d in arr.D]
        self.offset = [arr.delta_g[i] * w // (2 * arr.D[i]) for i in range(arr.n)]
        self.halfwidth = [int(ext / 2 * w) for ext in arr.extents]
        self.facets = [
            (nu, int(off * w)) for nu, off in arr.shape.facets
        ]

    def locate(self, x) -> tuple[int, ...] | None:
        """x: integer coordinates in units of 1/scale (any lift of the torus)."""
        arr = self.arr
        candidates = []
        for i in range(arr.n):
            r = x[i] - self.offset[i]
            s = self.step[i]
            h = self.halfwidth[i]
            lo = (r - h) // s + 1
            hi = -((-(r + h)) // s) - 1
            if lo > hi:
                return None
            candidates.append(range(lo, hi + 1))
        for t in product(*candidates):
            u = [x[i] - (self.offset[i] + t[i] * self.step[i]) for i in range(arr.n)]
            if all(
                abs(sum(c * v for c, v in zip(nu, u))) < thr
                for nu, thr in self.facets
            ):
                return t
        return None

    def index_of(self, t) -> tuple[int, ...]:
        """Omega index of the lift labelled t."""
        return tuple(ti % d for ti, d in zip(t, self.arr.D))


def point_location(arr: ZonotopeArrangement, theta):
    """(alpha, lift) of the open zonotope strictly containing theta, or None."""
    theta = tuple(Fraction(t) for t in theta)
    extra = 1
    for t in theta:
        extra = lcm(extra, t.denominator)
    loc = ScaledLocator(arr, extra)
    x = [int(t * loc.scale) for t in theta]
    t = loc.locate(x)
    if t is None:
        return None
    return loc.index_of(t), tuple(ti // d for ti, d in zip(t, arr.D))


def membership_by_zonotope(arr: ZonotopeArrangement, theta) -> Region:
    """Oracle membership: complement iff strictly inside some zonotope lift."""
    return Region.COMPLEMENT if point_location(arr, theta) is not None else Region.COAMOEBA


# ---------------------------------------------------------------------------
# Conjugation on indices and slice counts


@dataclass(frozen=True)
class ConjugationAction:
    """The involution alpha -> c(alpha) on Omega and its fixed set."""

    mapping: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]
    fixed: tuple[tuple[int, ...], ...]

    def __call__(self, alpha):
        return dict(self.mapping)[tuple(alpha)]


def conjugate_index(arr: ZonotopeArrangement, alpha) -> tuple[int, ...]:
    """Index of the mirror zonotope: center(c(alpha)) = -center(alpha).

    Per coordinate: (d_i - alpha_i) mod d_i when delta_g_i = 0, and
    (d_i - 1) - alpha_i when delta_g_i = 1.
    """
    arr._check_index(alpha)
    out = []
    for a, d, dg in zip(alpha, arr.D, arr.delta_g):
        out.append((d - a) % d if dg == 0 else (d - 1) - a)
    return tuple(out)


def conjugation_action(arr: ZonotopeArrangement) -> ConjugationAction:
    pairs = tuple((alpha, conjugate_index(arr, alpha)) for alpha in arr.omega())
    fixed = tuple(a for a, b in pairs if a == b)
    return ConjugationAction(pairs, fixed)


def fixed_indices(arr: ZonotopeArrangement) -> tuple[tuple[int, ...], ...]:
    """Fixed points of the conjugation, by enumeration."""
    return tuple(a for a in arr.omega() if conjugate_index(arr, a) == a)


def slice_count(arr: ZonotopeArrangement, axis: int, alpha) -> int:
    """Number of times the subtorus {theta_axis = 0} crosses zonotope alpha.

    Equals the number of integers strictly inside the open interval
    (center - L/2, center + L/2) on that axis; tangency contributes nothing
    because the zonotopes are open.
    """
    c = arr.center(alpha)[axis]
    h = arr.extents[axis] / 2
    return ceil(c + h) - floor(c - h) - 1


def parity_set(arr: ZonotopeArrangement, axis: int) -> frozenset:
    """J_axis: indices whose slice count along `axis` is odd."""
    return frozenset(
        alpha for alpha in arr.omega() if slice_count(arr, axis, alpha) % 2 == 1
    )
