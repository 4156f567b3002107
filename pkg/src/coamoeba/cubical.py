"""Grid cubical oracle: brute-force homology of the coamoeba (n <= 3).

The unit torus is cut into a grid of boxes; a cell survives unless it sits
strictly inside one lift of one open zonotope (decided exactly, via the
vertex labels of the arrangement's integer point locator).  The kept complex
contains the coamoeba and, at adequate resolution, deformation-retracts to
it; resolution-doubling stability is the empirical guard, so this is a
verification-grade oracle, not a proof-grade one.

Ranks over GF(2) of the boundary matrices give the Betti numbers, and the
cellular negation map induces 1 + c* on middle homology, whose rank is
computed from a kernel basis.  An equivariant free-face collapse shrinks the
complex first; it removes conjugation-orbits of free pairs only, so the
collapsed complex is again negation-invariant and its inclusion is an
equivariant homotopy equivalence.
"""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass
from itertools import product
from math import lcm

from . import exactmath, geometry, homology
from .exactmath import Z2Matrix
from .geometry import ZonotopeArrangement
from .model import NormalizedModel, partition


class UnsupportedDimension(ValueError):
    pass


class BadResolution(ValueError):
    pass


class SymmetryViolation(RuntimeError):
    """The negation map left the kept cell set; the build is broken."""


class CubicalComplex:
    """Kept cells of the grid model, one frozenset of cell ids per dimension.

    A cell is a product of grid intervals and grid points: `ext` is the
    bitmask of axes along which it extends, `pos` its base corner.  Ids pack
    (pos, ext) into one int so sets and matrices stay cheap.
    """

    def __init__(self, n: int, resolution, cells):
        self.n = n
        self.resolution = tuple(resolution)
        self.cells = tuple(frozenset(s) for s in cells)
        strides = [1]
        for m in self.resolution[:-1]:
            strides.append(strides[-1] * m)
        self._strides = tuple(strides)

    def encode(self, pos, ext: int) -> int:
        lin = 0
        for a, s in zip(pos, self._strides):
            lin += a * s
        return (lin << self.n) | ext

    def decode(self, cid: int):
        ext = cid & ((1 << self.n) - 1)
        lin = cid >> self.n
        pos = []
        for m in self.resolution:
            lin, a = divmod(lin, m)
            pos.append(a)
        return tuple(pos), ext

    def dim(self, cid: int) -> int:
        return bin(cid & ((1 << self.n) - 1)).count("1")

    def faces(self, cid: int) -> list[int]:
        pos, ext = self.decode(cid)
        out = []
        for i in range(self.n):
            bit = 1 << i
            if ext & bit:
                lowered = ext & ~bit
                out.append(self.encode(pos, lowered))
                up = list(pos)
                up[i] = (up[i] + 1) % self.resolution[i]
                out.append(self.encode(up, lowered))
        return out

    def cofaces(self, cid: int) -> list[int]:
        pos, ext = self.decode(cid)
        out = []
        for i in range(self.n):
            bit = 1 << i
            if not ext & bit:
                raised = ext | bit
                out.append(self.encode(pos, raised))
                down = list(pos)
                down[i] = (down[i] - 1) % self.resolution[i]
                out.append(self.encode(down, raised))
        return out

    def negate(self, cid: int) -> int:
        """Image of a cell under x -> -x on the torus."""
        pos, ext = self.decode(cid)
        out = []
        for i, (a, m) in enumerate(zip(pos, self.resolution)):
            if ext & (1 << i):
                out.append((m - 1 - a) % m)
            else:
                out.append((m - a) % m)
        return self.encode(out, ext)

    def cell_count(self) -> int:
        return sum(len(s) for s in self.cells)


def build_complex(arr: ZonotopeArrangement, resolution) -> CubicalComplex:
    """Kept-cell complex at the given per-axis resolution.

    Each resolution must be a positive multiple of 2*d_i: that puts every
    zonotope center and every pinch point of the arrangement on the grid and
    makes the grid negation-symmetric.  A cell is discarded exactly when all
    its corners are strictly inside a single zonotope lift, which by
    convexity means the whole closed cell is; lower cells additionally
    survive whenever a kept higher cell needs them (closure).
    """
    n = arr.n
    if n > 3:
        raise UnsupportedDimension(f"cubical oracle supports n <= 3, got {n}")
    m = tuple(resolution)
    if len(m) != n:
        raise BadResolution(f"expected {n} resolutions, got {len(m)}")
    for mi, di in zip(m, arr.D):
        if mi <= 0 or mi % (2 * di) != 0:
            raise BadResolution(
                f"resolution {mi} is not a positive multiple of {2 * di}"
            )

    locator = geometry.ScaledLocator(arr, extra=lcm(*m))
    unit = [locator.scale // mi for mi in m]
    labels: list = [None] * _grid_size(m)
    for pos in product(*(range(mi) for mi in m)):
        lin = 0
        stride = 1
        for a, mi in zip(pos, m):
            lin += a * stride
            stride *= mi
        labels[lin] = locator.locate([pos[i] * unit[i] for i in range(n)])

    strides = [1]
    for mi in m[:-1]:
        strides.append(strides[-1] * mi)

    def corner_label(b):
        # b may equal m_i on some axis: same grid vertex one lattice period
        # over, so the lift label shifts by d_i there.
        lin = 0
        shift = None
        for i in range(n):
            a = b[i]
            if a == m[i]:
                a = 0
                if shift is None:
                    shift = [0] * n
                shift[i] = arr.D[i]
            lin += a * strides[i]
        t = labels[lin]
        if t is None or shift is None:
            return t
        return tuple(ti + si for ti, si in zip(t, shift))

    def strictly_inside(pos, ext: int) -> bool:
        first = None
        sub = ext
        while True:
            b = [pos[i] + ((sub >> i) & 1) for i in range(n)]
            t = corner_label(b)
            if t is None:
                return False
            if first is None:
                first = t
            elif t != first:
                return False
            if sub == 0:
                return True
            sub = (sub - 1) & ext

    scratch = CubicalComplex(n, m, [()] * (n + 1))
    kept: list[set[int]] = [set() for _ in range(n + 1)]
    for k in range(n, -1, -1):
        for ext in range(1 << n):
            if bin(ext).count("1") != k:
                continue
            for pos in product(*(range(mi) for mi in m)):
                if not strictly_inside(pos, ext):
                    kept[k].add(scratch.encode(pos, ext))
        if k < n:
            for tau in kept[k + 1]:
                kept[k].update(scratch.faces(tau))
    return CubicalComplex(n, m, kept)


def _grid_size(m) -> int:
    out = 1
    for mi in m:
        out *= mi
    return out


def collapse(cx: CubicalComplex) -> CubicalComplex:
    """Equivariant free-face collapse.

    Repeatedly removes a free pair (sigma, tau) together with its negation
    image; negation maps free pairs to free pairs, so the result is again
    negation-invariant, and each step is an elementary collapse, so the
    inclusion of the result is an equivariant homotopy equivalence.  Pairs
    whose coface is negation-fixed with swapped free faces are skipped.
    """
    kept = [set(s) for s in cx.cells]
    queue: deque = deque()
    for k in range(cx.n - 1, -1, -1):
        queue.extend((k, cid) for cid in sorted(kept[k]))
    while queue:
        k, sigma = queue.popleft()
        if sigma not in kept[k]:
            continue
        cofs = [c for c in cx.cofaces(sigma) if c in kept[k + 1]]
        if len(cofs) != 1:
            continue
        tau = cofs[0]
        sigma2 = cx.negate(sigma)
        if sigma2 == sigma:
            pairs = [(sigma, tau)]
        else:
            tau2 = cx.negate(tau)
            if tau2 == tau:
                continue
            pairs = [(sigma, tau), (sigma2, tau2)]
        for s, t in pairs:
            kept[k].discard(s)
            kept[k + 1].discard(t)
        for s, t in pairs:
            for f in cx.faces(t):
                if f in kept[k]:
                    queue.append((k, f))
            if k > 0:
                for f in cx.faces(s):
                    if f in kept[k - 1]:
                        queue.append((k - 1, f))
    return CubicalComplex(cx.n, cx.resolution, kept)


def boundary_matrix(cx: CubicalComplex, k: int) -> Z2Matrix:
    """Mod-2 boundary of the kept k-cells over the kept (k-1)-cells.

    Rows follow sorted cell ids in dimension k, columns in dimension k-1;
    the ordering is part of the contract so ranks and timings reproduce.
    """
    if not 0 <= k <= cx.n:
        raise ValueError(f"no boundary in dimension {k}")
    rows_cells = sorted(cx.cells[k])
    if k == 0:
        return Z2Matrix([0] * len(rows_cells), 0)
    col_pos = {cid: i for i, cid in enumerate(sorted(cx.cells[k - 1]))}
    rows = []
    for cid in rows_cells:
        mask = 0
        for f in cx.faces(cid):
            mask ^= 1 << col_pos[f]
        rows.append(mask)
    return Z2Matrix(rows, len(col_pos))


def betti_z2(cx: CubicalComplex) -> tuple[int, ...]:
    """Betti numbers b_k = #cells_k - rank d_k - rank d_(k+1)."""
    ranks = [exactmath.z2_rank(boundary_matrix(cx, k)) for k in range(cx.n + 1)]
    ranks.append(0)
    return tuple(
        len(cx.cells[k]) - ranks[k] - ranks[k + 1] for k in range(cx.n + 1)
    )


def euler_characteristic(cx: CubicalComplex) -> int:
    return sum((-1) ** k * len(cx.cells[k]) for k in range(cx.n + 1))


def check_negation_symmetry(cx: CubicalComplex) -> None:
    for k in range(cx.n + 1):
        for cid in cx.cells[k]:
            if cx.negate(cid) not in cx.cells[k]:
                raise SymmetryViolation(
                    f"cell {cx.decode(cid)} kept but its mirror is not"
                )


def conjugation_rank(cx: CubicalComplex) -> int:
    """Rank of 1 + c* on middle homology of the kept complex.

    With f = 1 + c# on (n-1)-chains, Z = ker d_(n-1) and B = im d_n, the
    rank is dim((f(Z) + B) / B) = rank(f(Z) stacked on B) - rank(B); f maps
    cycles to cycles, so this is the rank of the induced map on H_(n-1).
    """
    check_negation_symmetry(cx)
    n = cx.n
    mids = sorted(cx.cells[n - 1])
    pos = {cid: i for i, cid in enumerate(mids)}
    perm = [pos[cx.negate(cid)] for cid in mids]

    def apply_negation(mask: int) -> int:
        out = 0
        r = mask
        while r:
            j = r.bit_length() - 1
            out |= 1 << perm[j]
            r ^= 1 << j
        return out

    kernel = exactmath.z2_left_kernel(boundary_matrix(cx, n - 1))
    f_rows = [v ^ apply_negation(v) for v in kernel.rows]
    b_rows = list(boundary_matrix(cx, n).rows)
    width = len(mids)
    rank_b = exactmath.z2_rank(Z2Matrix(b_rows, width))
    rank_fb = exactmath.z2_rank(Z2Matrix(f_rows + b_rows, width))
    return rank_fb - rank_b


def dump_cells(cx: CubicalComplex) -> str:
    """Plain-text cell list: one line per cell, `a+` marking extended axes."""
    lines = [f"# resolution {' '.join(str(m) for m in cx.resolution)}"]
    for k in range(cx.n + 1):
        for cid in sorted(cx.cells[k]):
            pos, ext = cx.decode(cid)
            fields = [
                f"{a}+" if ext & (1 << i) else str(a) for i, a in enumerate(pos)
            ]
            lines.append(f"{k} " + " ".join(fields))
    return "\n".join(lines) + "\n"


def default_resolution(d) -> tuple[int, ...]:
    """8 * lcm(2 d_i) per axis, capped per dimension (128 / 32 / 12).

    Above the cap, each axis gets the largest multiple of 2 d_i that fits,
    never below 2 d_i itself.
    """
    n = len(d)
    cap = {1: 128, 2: 32}.get(n, 12)
    base = 1
    for di in d:
        base = lcm(base, 2 * di)
    r = 8 * base
    if r <= cap:
        return (r,) * n
    return tuple(2 * di * max(1, cap // (2 * di)) for di in d)


@dataclass
class VerificationRecord:
    """Side-by-side cubical vs closed-form results for one instance."""

    instance: str
    resolution: tuple[int, ...]
    resolution_doubled: tuple[int, ...] | None
    cubical_betti: tuple[int, ...]
    closed_betti: tuple[int, ...]
    cubical_rank: int
    closed_rank: int
    betti_agree: bool
    rank_agree: bool
    stable: bool
    timings: dict[str, float]

    @property
    def ok(self) -> bool:
        return self.betti_agree and self.rank_agree and self.stable

    def to_dict(self, include_timings: bool = True) -> dict:
        out = {
            "instance": self.instance,
            "resolution": list(self.resolution),
            "resolution_doubled": (
                list(self.resolution_doubled) if self.resolution_doubled else None
            ),
            "cubical_betti": list(self.cubical_betti),
            "closed_betti": list(self.closed_betti),
            "cubical_rank": self.cubical_rank,
            "closed_rank": self.closed_rank,
            "betti_agree": self.betti_agree,
            "rank_agree": self.rank_agree,
            "stable": self.stable,
            "ok": self.ok,
        }
        if include_timings:
            out["timings"] = self.timings
        return out


def _cubical_pass(arr: ZonotopeArrangement, resolution, timings: dict, tag: str):
    t0 = time.perf_counter()
    cx = collapse(build_complex(arr, resolution))
    t1 = time.perf_counter()
    betti = betti_z2(cx)
    rank = conjugation_rank(cx)
    t2 = time.perf_counter()
    timings[f"build_{tag}_s"] = t1 - t0
    timings[f"ranks_{tag}_s"] = t2 - t1
    return betti, rank


def verify(
    model: NormalizedModel,
    resolution=None,
    instance: str = "",
    doubled: bool = True,
) -> VerificationRecord:
    """Build, compute, compare; re-run at doubled resolution for stability."""
    dec = exactmath.snf([list(r) for r in model.A])
    arr = geometry.arrangement(model, dec)
    closed = homology.betti_coamoeba(model, dec)
    part = partition(dec.D, arr.delta_g)
    r_closed = homology.rank_closed(part, dec.D)
    if resolution is None:
        resolution = default_resolution(dec.D)
    elif isinstance(resolution, int):
        resolution = (resolution,) * model.n
    resolution = tuple(resolution)
    if not instance:
        instance = f"A={[list(r) for r in model.A]} eps={list(model.epsilon)}"

    timings: dict[str, float] = {}
    t_start = time.perf_counter()
    betti, rank = _cubical_pass(arr, resolution, timings, "base")
    res2 = None
    stable = True
    if doubled:
        res2 = tuple(2 * mi for mi in resolution)
        betti2, rank2 = _cubical_pass(arr, res2, timings, "doubled")
        stable = betti2 == betti and rank2 == rank
    timings["total_s"] = time.perf_counter() - t_start

    return VerificationRecord(
        instance=instance,
        resolution=resolution,
        resolution_doubled=res2,
        cubical_betti=betti,
        closed_betti=closed.betti,
        cubical_rank=rank,
        closed_rank=r_closed,
        betti_agree=betti == closed.betti,
        rank_agree=rank == r_closed,
        stable=stable,
        timings=timings,
    )
