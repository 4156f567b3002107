"""Mod-2 homology of the coamoeba, the conjugation action, and verdicts.

The rank of 1 + c* on middle homology is computed along two fully
independent routes: a closed formula driven by the parity partition, and an
assembled presentation whose generator images come from the geometric slice
counts.  The pipeline refuses to produce a report when the two disagree,
or when any of the other cross-checks (fixed-point census, quadrant counts,
defect identities) fails: such a disagreement is a bug in this software,
never a property of the input.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from . import exactmath, geometry
from .exactmath import SmithDecomposition, Z2Matrix
from .geometry import ConjugationAction, ZonotopeArrangement
from .model import (
    IndexPartition,
    NormalizedModel,
    PolynomialSpec,
    delta,
    normalize,
    partition,
)

CONJECTURE_FLAG = "conditional-on-conjecture-1.1"


class ConsistencyFailure(RuntimeError):
    """Two independent routes disagreed; the implementation is at fault."""


@dataclass(frozen=True)
class HomologyProfile:
    """Mod-2 Betti numbers (b_0, ..., b_n) of the coamoeba and their sum."""

    betti: tuple[int, ...]
    total: int


def betti_coamoeba(model: NormalizedModel, dec: SmithDecomposition) -> HomologyProfile:
    """Closed-form Betti numbers.

    The inclusion into the torus is an isomorphism on H_k for k <= n-2,
    middle homology has dimension n + d_1...d_n - 1, and everything above
    vanishes.
    """
    n = model.n
    size = 1
    for d in dec.D:
        size *= d
    betti = [comb(n, k) for k in range(n - 1)]
    betti.append(n + size - 1)
    betti.append(0)
    return HomologyProfile(tuple(betti), sum(betti))


@dataclass(frozen=True)
class CStarPresentation:
    """Images of 1 + c* on the middle-homology generators.

    Generators are the n torus classes B_i followed by one class per
    zonotope boundary; all images land in the zonotope block, encoded as
    bitmasks over Omega in lexicographic order.  The single relation is
    w = sum of all zonotope classes.
    """

    n: int
    omega: tuple[tuple[int, ...], ...]
    b_rows: tuple[int, ...]
    z_rows: tuple[int, ...]
    relation: int

    @property
    def generator_count(self) -> int:
        return self.n + len(self.omega)


def cstar_presentation(
    arr: ZonotopeArrangement,
    action: ConjugationAction,
    parity_sets,
) -> CStarPresentation:
    """Assemble 1 + c* from the conjugation action and the slice parities.

    B_i maps to the sum of zonotope classes with odd slice count along axis
    i; a zonotope class maps to itself plus its mirror.
    """
    omega = tuple(arr.omega())
    pos = {alpha: i for i, alpha in enumerate(omega)}
    conj = dict(action.mapping)
    b_rows = []
    for i in range(arr.n):
        mask = 0
        for alpha in parity_sets[i]:
            mask |= 1 << pos[alpha]
        b_rows.append(mask)
    z_rows = tuple(
        (1 << pos[alpha]) ^ (1 << pos[conj[alpha]]) for alpha in omega
    )
    relation = (1 << len(omega)) - 1
    return CStarPresentation(arr.n, omega, tuple(b_rows), z_rows, relation)


def rank_assembled(pres: CStarPresentation) -> int:
    """Rank of 1 + c* on middle homology, from the assembled presentation.

    The image lives in (zonotope block)/(w); its dimension is the rank of
    all image rows stacked together with w, minus 1, since w is nonzero and
    itself maps to 0.
    """
    rows = list(pres.b_rows) + list(pres.z_rows) + [pres.relation]
    return exactmath.z2_rank(Z2Matrix(rows, len(pres.omega))) - 1


def rank_closed(part: IndexPartition, d) -> int:
    """Rank of 1 + c* on middle homology, closed form."""
    size = 1
    for di in d:
        size *= di
    if part.I10:
        return size // 2 - 1
    k = len(part.I00)
    return k + (size - 2**k) // 2


@dataclass(frozen=True)
class RealPartProfile:
    """Which open quadrants the real part meets.

    Bit g of quadrant_mask is set iff the quadrant whose coordinate-sign
    parities are the bits of g is nonempty; each nonempty intersection is a
    single contractible component.
    """

    quadrant_mask: int
    component_count: int
    all_quadrants_hit: bool


def quadrant_mask(model: NormalizedModel) -> RealPartProfile:
    """Occupied quadrants of the real part.

    Quadrant gamma is empty exactly when delta(epsilon) = A * delta(gamma)
    over GF(2).  The popcount is checked against the closed-form component
    count 2^n, or 2^n - 2^(n - rank2(A)) when delta lies in the image of
    A mod 2.
    """
    n = model.n
    dlt = delta(model.epsilon)
    mask = 0
    for g in range(2**n):
        bits = [(g >> i) & 1 for i in range(n)]
        image = [sum(model.A[i][k] * bits[k] for k in range(n)) % 2 for i in range(n)]
        if tuple(image) != dlt:
            mask |= 1 << g
    count = bin(mask).count("1")
    a2 = Z2Matrix.from_int_matrix([list(r) for r in model.A])
    r = exactmath.z2_rank(a2)
    in_image = exactmath.z2_in_span(
        Z2Matrix.from_int_matrix(exactmath.transpose([list(r_) for r_ in model.A])),
        dlt,
    )
    expected = 2**n if not in_image else 2**n - 2 ** (n - r)
    if count != expected:
        raise ConsistencyFailure(
            f"quadrant popcount {count} != closed form {expected}"
        )
    return RealPartProfile(mask, count, count == 2**n)


@dataclass(frozen=True)
class AnalysisReport:
    """Everything the pipeline knows about one model, cross-checked."""

    model: NormalizedModel
    G: tuple[tuple[int, ...], ...]
    D: tuple[int, ...]
    partition: IndexPartition
    homology: HomologyProfile
    rank_closed: int
    rank_assembled: int
    ranks_agree: bool
    real_part: RealPartProfile
    kernel_mod_image_dim: int
    defect: int
    galois_maximal_coamoeba: bool
    galois_maximal_CX: bool
    rank2_A: int

    def to_dict(self) -> dict:
        """Stable JSON form; the CX verdict carries its conditionality flag."""
        return {
            "model": {
                "n": self.model.n,
                "A": [list(r) for r in self.model.A],
                "epsilon": list(self.model.epsilon),
                "origin_index": self.model.origin_index,
                "globally_negated": self.model.globally_negated,
            },
            "snf": {"G": [list(r) for r in self.G], "D": list(self.D)},
            "partition": {
                "I00": list(self.partition.I00),
                "I10": list(self.partition.I10),
                "I01": list(self.partition.I01),
                "I11": list(self.partition.I11),
            },
            "homology": {
                "betti": list(self.homology.betti),
                "total": self.homology.total,
            },
            "rank_closed": self.rank_closed,
            "rank_assembled": self.rank_assembled,
            "ranks_agree": self.ranks_agree,
            "real_part": {
                "quadrant_mask": self.real_part.quadrant_mask,
                "component_count": self.real_part.component_count,
                "all_quadrants_hit": self.real_part.all_quadrants_hit,
            },
            "kernel_mod_image_dim": self.kernel_mod_image_dim,
            "defect": self.defect,
            "galois_maximal_coamoeba": self.galois_maximal_coamoeba,
            "galois_maximal_CX": {
                "value": self.galois_maximal_CX,
                "flag": CONJECTURE_FLAG,
            },
            "rank2_A": self.rank2_A,
        }


def analyze_model(model: NormalizedModel) -> AnalysisReport:
    """Full pipeline on a normalized model, with every cross-check enforced."""
    n = model.n
    dec = exactmath.snf([list(r) for r in model.A])
    arr = geometry.arrangement(model, dec)
    action = geometry.conjugation_action(arr)
    parities = [geometry.parity_set(arr, i) for i in range(n)]
    pres = cstar_presentation(arr, action, parities)
    r_asm = rank_assembled(pres)
    part = partition(dec.D, arr.delta_g)
    r_cls = rank_closed(part, dec.D)
    if r_cls != r_asm:
        raise ConsistencyFailure(
            f"rank mismatch: closed {r_cls} vs assembled {r_asm} for A={model.A}"
        )
    expected_fixed = 0 if part.I10 else 2 ** len(part.I00)
    if len(action.fixed) != expected_fixed:
        raise ConsistencyFailure(
            f"fixed-point census {len(action.fixed)} != {expected_fixed}"
        )
    prof = betti_coamoeba(model, dec)
    real = quadrant_mask(model)
    a2 = Z2Matrix.from_int_matrix([list(r) for r in model.A])
    rank2 = exactmath.z2_rank(a2)
    in_image = exactmath.z2_in_span(
        Z2Matrix.from_int_matrix(exactmath.transpose([list(r) for r in model.A])),
        delta(model.epsilon),
    )
    # Three-way equivalence: all quadrants hit <=> delta not in Im(A mod 2)
    # <=> some axis has odd delta_g over an even d.
    if not (real.all_quadrants_hit == (not in_image) == bool(part.I10)):
        raise ConsistencyFailure("equivalence chain violated")
    kmi = prof.total - 2 * r_cls
    defect = kmi - real.component_count
    expected_defect = (
        0 if real.all_quadrants_hit else 2 * (2 ** (n - rank2) - 1 - (n - rank2))
    )
    if defect != expected_defect or defect < 0:
        raise ConsistencyFailure(
            f"defect {defect} != expected {expected_defect}"
        )
    if real.component_count > prof.total:
        raise ConsistencyFailure("real part exceeds total Betti number")
    maximal = defect == 0
    if maximal != (real.all_quadrants_hit or n - rank2 in (0, 1)):
        raise ConsistencyFailure("maximality criterion disagrees with defect")
    return AnalysisReport(
        model=model,
        G=tuple(tuple(r) for r in dec.G),
        D=tuple(dec.D),
        partition=part,
        homology=prof,
        rank_closed=r_cls,
        rank_assembled=r_asm,
        ranks_agree=True,
        real_part=real,
        kernel_mod_image_dim=kmi,
        defect=defect,
        galois_maximal_coamoeba=maximal,
        galois_maximal_CX=maximal,
        rank2_A=rank2,
    )


def analyze(spec: PolynomialSpec) -> AnalysisReport:
    """normalize -> snf -> arrangement -> action -> ranks -> verdicts."""
    return analyze_model(normalize(spec))


def defect_and_verdict(model: NormalizedModel):
    """(kernel_mod_image_dim, defect, verdict dict) for one model."""
    report = analyze_model(model)
    return (
        report.kernel_mod_image_dim,
        report.defect,
        {
            "galois_maximal_coamoeba": report.galois_maximal_coamoeba,
            "galois_maximal_CX": report.galois_maximal_CX,
        },
    )
