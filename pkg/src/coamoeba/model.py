"""Input polynomials and their canonical combinatorial data.

A polynomial in n variables with exactly n+1 monomials spanning a
nondegenerate simplex is reduced to the pair (A, epsilon): the integer matrix
of exponent vectors relative to a chosen origin vertex, and the signs of the
remaining coefficients once the origin coefficient is made +1.  Coefficient
magnitudes are validated nonzero and then ignored; every topological quantity
downstream depends only on signs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import exactmath


class SpecError(ValueError):
    """Invalid polynomial specification."""


class WrongTermCount(SpecError):
    pass


class DuplicateExponent(SpecError):
    pass


class DegenerateSimplex(SpecError):
    pass


@dataclass(frozen=True)
class Term:
    exponent: tuple[int, ...]
    coefficient: Fraction


@dataclass(frozen=True)
class PolynomialSpec:
    """n+1 monomials in n variables; exponents may be negative (Laurent)."""

    n: int
    terms: tuple[Term, ...]


def spec_from_dict(obj) -> PolynomialSpec:
    """Parse the JSON input schema:

    {"n": int, "terms": [{"exponent": [int, ...], "coefficient": "p/q"}, ...]}

    Coefficients are rationals given as strings (or JSON integers).
    """
    if not isinstance(obj, dict):
        raise SpecError("input must be a JSON object")
    n = obj.get("n")
    if not isinstance(n, int) or n < 1:
        raise SpecError("'n' must be an integer >= 1")
    raw_terms = obj.get("terms")
    if not isinstance(raw_terms, list):
        raise SpecError("'terms' must be a list")
    if len(raw_terms) != n + 1:
        raise WrongTermCount(f"expected {n + 1} terms for n={n}, got {len(raw_terms)}")
    terms = []
    for t in raw_terms:
        if not isinstance(t, dict):
            raise SpecError("each term must be an object")
        exp = t.get("exponent")
        if (
            not isinstance(exp, list)
            or len(exp) != n
            or not all(isinstance(e, int) for e in exp)
        ):
            raise SpecError(f"term exponent must be a list of {n} integers")
        coeff = t.get("coefficient")
        if isinstance(coeff, bool) or not isinstance(coeff, (str, int)):
            raise SpecError("coefficient must be a rational string or integer")
        try:
            c = Fraction(coeff)
        except (ValueError, ZeroDivisionError) as exc:
            raise SpecError(f"bad coefficient {coeff!r}: {exc}") from None
        if c == 0:
            raise SpecError("coefficients must be nonzero")
        terms.append(Term(tuple(exp), c))
    seen = set()
    for t in terms:
        if t.exponent in seen:
            raise DuplicateExponent(f"exponent {list(t.exponent)} appears twice")
        seen.add(t.exponent)
    return PolynomialSpec(n, tuple(terms))


def spec_to_dict(spec: PolynomialSpec) -> dict:
    return {
        "n": spec.n,
        "terms": [
            {"exponent": list(t.exponent), "coefficient": str(t.coefficient)}
            for t in spec.terms
        ],
    }


@dataclass(frozen=True)
class NormalizedModel:
    """Canonical (A, epsilon) form: origin vertex at 0, constant term +1.

    Row i of A is the i-th nonzero vertex after translation, rows sorted
    lexicographically; epsilon[i] is the sign of the matching coefficient.
    """

    n: int
    A: tuple[tuple[int, ...], ...]
    epsilon: tuple[int, ...]
    origin_index: int
    globally_negated: bool


def normalize(spec: PolynomialSpec, origin_index: int | None = None) -> NormalizedModel:
    """Translate a spec to its canonical model.

    The origin vertex defaults to the lexicographically smallest exponent
    (any vertex gives the same analysis; determinism is what matters).  If
    the origin coefficient is negative the whole polynomial is negated so
    that the constant term ends up +1.
    """
    n = spec.n
    if len(spec.terms) != n + 1:
        raise WrongTermCount(f"expected {n + 1} terms, got {len(spec.terms)}")
    exps = [t.exponent for t in spec.terms]
    if len(set(exps)) != len(exps):
        raise DuplicateExponent("exponents must be pairwise distinct")
    if origin_index is None:
        origin_index = min(range(n + 1), key=lambda i: exps[i])
    elif not 0 <= origin_index <= n:
        raise SpecError(f"origin index {origin_index} out of range")
    origin = exps[origin_index]
    negate = spec.terms[origin_index].coefficient < 0
    rest = []
    for i, t in enumerate(spec.terms):
        if i == origin_index:
            continue
        row = tuple(e - o for e, o in zip(t.exponent, origin))
        c = -t.coefficient if negate else t.coefficient
        rest.append((row, 1 if c > 0 else -1))
    rest.sort(key=lambda pair: pair[0])
    a = tuple(row for row, _ in rest)
    if exactmath.det(a) == 0:
        raise DegenerateSimplex("exponent vectors do not span; det(A) = 0")
    return NormalizedModel(
        n=n,
        A=a,
        epsilon=tuple(s for _, s in rest),
        origin_index=origin_index,
        globally_negated=negate,
    )


def model_from_matrix(a, epsilon) -> NormalizedModel:
    """Build a model straight from (A, epsilon); used by tests and corpora."""
    a = tuple(tuple(int(x) for x in row) for row in a)
    n = len(a)
    if any(len(row) != n for row in a):
        raise SpecError("A must be square")
    if len(epsilon) != n or any(e not in (1, -1) for e in epsilon):
        raise SpecError("epsilon must be a vector of +/-1 of length n")
    if exactmath.det(a) == 0:
        raise DegenerateSimplex("det(A) = 0")
    return NormalizedModel(n, a, tuple(epsilon), 0, False)


def model_to_spec(model: NormalizedModel) -> PolynomialSpec:
    """Re-serialize a model as a spec (origin term first, coefficient +1)."""
    terms = [Term((0,) * model.n, Fraction(1))]
    terms += [
        Term(row, Fraction(s)) for row, s in zip(model.A, model.epsilon)
    ]
    return PolynomialSpec(model.n, tuple(terms))


def delta(epsilon) -> tuple[int, ...]:
    """Sign vector to parity vector: +1 -> 0, -1 -> 1."""
    if any(e not in (1, -1) for e in epsilon):
        raise ValueError("signs must be +/-1")
    return tuple(0 if e == 1 else 1 for e in epsilon)


@dataclass(frozen=True)
class IndexPartition:
    """Axes 0..n-1 split by (parity of deltaG_i, parity of d_i).

    I00: deltaG even, d even;  I10: deltaG odd, d even;
    I01: deltaG even, d odd;   I11: deltaG odd, d odd.
    """

    I00: tuple[int, ...]
    I10: tuple[int, ...]
    I01: tuple[int, ...]
    I11: tuple[int, ...]


def partition(d, delta_g) -> IndexPartition:
    if len(d) != len(delta_g):
        raise ValueError("length mismatch")
    buckets = {(0, 0): [], (1, 0): [], (0, 1): [], (1, 1): []}
    for i, (di, gi) in enumerate(zip(d, delta_g)):
        buckets[(gi % 2, di % 2)].append(i)
    return IndexPartition(
        I00=tuple(buckets[(0, 0)]),
        I10=tuple(buckets[(1, 0)]),
        I01=tuple(buckets[(0, 1)]),
        I11=tuple(buckets[(1, 1)]),
    )
