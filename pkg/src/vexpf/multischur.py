"""Multi-Schur determinants and Pfaffians.

Three constructions over a list of coefficient series:

  * multischur_det -- type A, a Jacobi-Trudi style determinant in plain
    power series;
  * multischur_pf -- types B/C, the Pfaffian with (i,j) entry
      c(i)_{k_i} c(j)_{k_j} + 2 sum_{m>=1} (-1)^m c(i)_{k_i+m} c(j)_{k_j-m},
    odd sizes handled by a trivial extra column;
  * multischur_pf_d -- type D, the paired Pfaffian taking a finite
    polynomial c(i) alongside each series d(i); odd sizes expand along a
    border whose entries are d(i)_{k_i} + c(i)_{k_i}.

Each entry of the Pfaffian matrix is computed for i < j only; the skew
symmetry that makes the result well-behaved under column exchange holds
exactly when each series multiplier has degree below its index, and is
verified up front (Pfaffians of arbitrary integer index sequences are
available with check=False).
"""

from __future__ import annotations

from .polycore import Dyadic, Polynomial, exact_divide, NotDivisible, series_inverse
from .gamma import (
    GammaElement,
    GeneratorSeries,
    UNIT_SERIES,
    q_pair,
    series_coeff,
)


class SkewCheckFailed(ValueError):
    pass


class StarRelationFailed(ValueError):
    pass


class DivisibilityFailed(ValueError):
    pass


def rational_series(num_factors, den_factors, bound: int) -> Polynomial:
    """prod(num_factors) / prod(den_factors) truncated at total degree bound.

    Each factor must have unit constant term.
    """
    num = Polynomial.const(1)
    for f in num_factors:
        num = num * Polynomial.of(f)
    den = Polynomial.const(1)
    for f in den_factors:
        den = den * Polynomial.of(f)
    if den == Polynomial.const(1):
        return num.truncate(bound)
    return (num * series_inverse(den, bound)).truncate(bound)


# ---------------------------------------------------------------------------
# type A
# ---------------------------------------------------------------------------


def multischur_det(lam, series) -> Polynomial:
    """det( a(i)_{lam_i + j - i} ) for 1 <= i, j <= r.

    lam: weakly decreasing nonnegative integers; series: one truncated
    power series (Polynomial) per row, truncated at degree >= lam_1 + r.
    """
    lam = tuple(lam)
    r = len(lam)
    if len(series) != r:
        raise ValueError("need one series per row")
    matrix = [
        [Polynomial.of(series[i]).part(lam[i] + j - i) for j in range(r)]
        for i in range(r)
    ]
    return _det(matrix, tuple(range(r)), {})


def _det(matrix, cols, memo):
    if not cols:
        return Polynomial.const(1)
    key = cols
    if key in memo:
        return memo[key]
    i = len(matrix) - len(cols)
    acc = Polynomial()
    for pos, j in enumerate(cols):
        entry = matrix[i][j]
        if not entry:
            continue
        sub = _det(matrix, cols[:pos] + cols[pos + 1 :], memo)
        term = entry * sub
        acc = acc + (term if pos % 2 == 0 else -term)
    memo[key] = acc
    return acc


# ---------------------------------------------------------------------------
# types B / C
# ---------------------------------------------------------------------------


def multischur_pf(lam, series, check: bool = True) -> GammaElement:
    """The Pfaffian Pf_lam(c(1), ..., c(r)) as an element of the basis ring.

    lam: integers (a strict partition in the checked case); series: one
    GeneratorSeries per index.  With check=True, each multiplier must
    have degree < its index, which guarantees the matrix is genuinely
    skew; check=False evaluates the same first-row expansion for
    arbitrary integer sequences.
    """
    lam = tuple(lam)
    if len(series) != len(lam):
        raise ValueError("need one series per index")
    series = list(series)
    if check:
        for k, c in zip(lam, series):
            if c.multiplier.degree() >= max(k, 1):
                raise SkewCheckFailed(
                    f"multiplier degree {c.multiplier.degree()} too big for index {k}"
                )
    if len(lam) % 2 == 1:
        lam = lam + (0,)
        series = series + [UNIT_SERIES]
    entry = lambda i, j: q_pair(lam[i], lam[j], series[i], series[j])
    return _pfaffian(tuple(range(len(lam))), entry, {})


def _pfaffian(positions, entry, memo):
    if not positions:
        return GammaElement.one()
    if positions in memo:
        return memo[positions]
    first, rest = positions[0], positions[1:]
    acc = GammaElement.zero()
    for pos, j in enumerate(rest):
        e = entry(first, j)
        if not e:
            continue
        sub = _pfaffian(rest[:pos] + rest[pos + 1 :], entry, memo)
        term = e * sub
        acc = acc + (term if pos % 2 == 0 else -term)
    memo[positions] = acc
    return acc


# ---------------------------------------------------------------------------
# type D
# ---------------------------------------------------------------------------


def multischur_pf_d(lam, pairs, check: bool = True) -> GammaElement:
    """The paired Pfaffian Pf_lam(c(1)|d(1), ..., c(r)|d(r)).

    lam: strictly decreasing nonnegative integers; pairs: one
    (c, d) per index, c a Polynomial with unit constant term, d a
    GeneratorSeries.  The (i,j) entry is

      (d(i)_{k_i} - c(i)_{k_i}) (d(j)_{k_j} + c(j)_{k_j})
        + 2 sum_{m=1}^{k_j} (-1)^m d(i)_{k_i+m} d(j)_{k_j-m};

    odd lengths expand along a border with entries d(i)_{k_i} + c(i)_{k_i}.
    No overall power of 1/2 is applied here.

    With check=True the defining invariants are verified: deg c(i) <=
    lam_i, c(i) divides d(i) and every earlier c(j) (j < i), and
    d(i) d(j)* = c(i) c(j)*.
    """
    lam = tuple(lam)
    if len(pairs) != len(lam):
        raise ValueError("need one c|d pair per index")
    cs = [Polynomial.of(c) for c, _ in pairs]
    ds = [d for _, d in pairs]
    if check:
        _check_paired(lam, cs, ds)
    return _paired_pf(lam, cs, ds)


def _check_paired(lam, cs, ds):
    for k, c, d in zip(lam, cs, ds):
        if c.constant_term() != Dyadic(1):
            raise ValueError("c series must have constant term 1")
        if c.degree() > k:
            raise SkewCheckFailed(f"deg c = {c.degree()} exceeds index {k}")
        try:
            exact_divide(d.multiplier, c)
        except NotDivisible:
            raise DivisibilityFailed(f"{c} does not divide {d!r}")
    for i in range(len(cs)):
        for j in range(i):
            try:
                exact_divide(cs[j], cs[i])
            except NotDivisible:
                raise DivisibilityFailed(f"c({i+1}) does not divide c({j+1})")
    for i in range(len(cs)):
        for j in range(i + 1, len(cs)):
            if ds[i].has_q != ds[j].has_q:
                raise StarRelationFailed("mixed series types")
            lhs = ds[i].multiplier * ds[j].multiplier.star()
            rhs = cs[i] * cs[j].star()
            if lhs != rhs:
                raise StarRelationFailed(
                    f"d({i+1}) d({j+1})* != c({i+1}) c({j+1})*"
                )


def _paired_entry(ki, kj, ci, di, cj, dj) -> GammaElement:
    left = (series_coeff(di, ki) - GammaElement.of(ci.part(ki))) * (
        series_coeff(dj, kj) + GammaElement.of(cj.part(kj))
    )
    for m in range(1, kj + 1):
        term = series_coeff(di, ki + m) * series_coeff(dj, kj - m)
        left = left + term * (2 * (-1) ** m)
    return left


def _paired_border(ki, ci, di) -> GammaElement:
    return series_coeff(di, ki) + GammaElement.of(ci.part(ki))


def _paired_pf(lam, cs, ds) -> GammaElement:
    r = len(lam)
    if r % 2 == 1:
        acc = GammaElement.zero()
        for k in range(r):
            rest = [i for i in range(r) if i != k]
            sub = _paired_pf(
                tuple(lam[i] for i in rest),
                [cs[i] for i in rest],
                [ds[i] for i in rest],
            )
            term = _paired_border(lam[k], cs[k], ds[k]) * sub
            acc = acc + (term if k % 2 == 0 else -term)
        return acc
    entry = lambda i, j: _paired_entry(lam[i], lam[j], cs[i], ds[i], cs[j], ds[j])
    return _pfaffian(tuple(range(r)), entry, {})


# ---------------------------------------------------------------------------
# the deformed basis families in the t variables
# ---------------------------------------------------------------------------


def _t_prod(count: int) -> Polynomial:
    out = Polynomial.const(1)
    for j in range(1, count + 1):
        out = out * (1 + Polynomial.variable("t", j))
    return out


def q_family(lam) -> GammaElement:
    """The deformed basis element with rows Q * prod_{j<lam_i}(1+t_j)."""
    lam = tuple(lam)
    series = [GeneratorSeries(True, _t_prod(k - 1)) for k in lam]
    return multischur_pf(lam, series)


def p_family(lam) -> GammaElement:
    """Half-generator version of q_family; equals q_family / 2^len(lam)."""
    lam = tuple(lam)
    series = [
        GeneratorSeries(True, _t_prod(k - 1), Dyadic(1, 1)) for k in lam
    ]
    return multischur_pf(lam, series)


def r_family(lam) -> GammaElement:
    """The even-orthogonal family: the paired Pfaffian with
    c(i) = prod_{j<=lam_i}(1+t_j), d(i) = Q*c(i), scaled by 2^-len(lam)."""
    lam = tuple(lam)
    pairs = [(_t_prod(k), GeneratorSeries(True, _t_prod(k))) for k in lam]
    pf = multischur_pf_d(lam, pairs)
    return pf * Polynomial.const(Dyadic(1, len(lam)))
