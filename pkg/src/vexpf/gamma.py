"""The ring Gamma = Z[Q_1, Q_2, ...]/(Q_k^2 + 2 sum_j (-1)^j Q_{k+j} Q_{k-j}).

Elements are kept in canonical form as integer (or polynomial) linear
combinations of the basis symbols Q_lambda, lambda a strict partition.
The half-generators P_lambda = 2^{-r} Q_lambda live in the same
representation with dyadic coefficients, so one straightening engine
serves both rings.

The straightening algorithm: sort a generator monomial weakly
decreasing; eliminate equal adjacent pairs with the defining relation;
a strictly decreasing monomial equals the basis symbol Q_lambda minus
the other terms of its Pfaffian expansion, which are strictly higher in
dominance order (at fixed degree), so the recursion terminates.
"""

from __future__ import annotations

from functools import lru_cache

from .polycore import Dyadic, Polynomial


class TruncationTooSmall(ValueError):
    pass


def is_strict(parts) -> bool:
    return all(a > b for a, b in zip(parts, parts[1:])) and all(a > 0 for a in parts)


def is_type_d(parts) -> bool:
    """Strictly decreasing, last part allowed to be 0."""
    return all(a > b for a, b in zip(parts, parts[1:])) and all(a >= 0 for a in parts)


# ---------------------------------------------------------------------------
# generator-monomial expansions (integer coefficients)
# ---------------------------------------------------------------------------
# A "raw" element is a dict mapping generator monomials -- tuples of
# positive ints, sorted weakly decreasing -- to coefficients.  () is 1.


def _gens(indices):
    return tuple(sorted((a for a in indices if a), reverse=True))


def _iadd(acc: dict, key, coeff):
    cur = acc.get(key)
    coeff = coeff if cur is None else cur + coeff
    if coeff:
        acc[key] = coeff
    elif cur is not None:
        del acc[key]


def _raw_mul(r1: dict, r2: dict) -> dict:
    out = {}
    for m1, c1 in r1.items():
        for m2, c2 in r2.items():
            _iadd(out, _gens(m1 + m2), c1 * c2)
    return out


@lru_cache(maxsize=None)
def pair_expansion(a: int, b: int) -> dict:
    """Q_{a b} (a > b >= 0) as a sum of generator monomials.

    Q_{a b} = Q_a Q_b + 2 sum_{j=1}^{b} (-1)^j Q_{a+j} Q_{b-j}.
    """
    if not a > b >= 0:
        raise ValueError("pair_expansion wants a > b >= 0")
    out = {}
    _iadd(out, _gens((a, b)), 1)
    for j in range(1, b + 1):
        _iadd(out, _gens((a + j, b - j)), 2 * (-1) ** j)
    return out


@lru_cache(maxsize=None)
def pf_expansion(lam: tuple) -> dict:
    """The defining Pfaffian of the basis symbol Q_lambda, expanded into
    generator monomials.  Odd lengths are handled by appending a 0 part."""
    if not is_strict(lam):
        raise ValueError(f"{lam} is not a strict partition")
    idx = lam if len(lam) % 2 == 0 else lam + (0,)
    return _pf_of_pairs(idx)


def _pf_of_pairs(idx: tuple) -> dict:
    if not idx:
        return {(): 1}
    # expand along the first row
    out = {}
    first, rest = idx[0], idx[1:]
    for j, b in enumerate(rest):
        sub = _pf_of_pairs(rest[:j] + rest[j + 1 :])
        term = _raw_mul(pair_expansion(first, b), sub)
        sign = (-1) ** j
        for m, c in term.items():
            _iadd(out, m, sign * c)
    return out


@lru_cache(maxsize=None)
def straighten_monomial(mono: tuple) -> dict:
    """Expand a generator monomial Q_{a_1} ... Q_{a_m} in the Q_lambda basis.

    Returns a dict {strict partition: integer coefficient}.
    """
    mono = _gens(mono)
    if len(mono) <= 1:
        return {mono: 1}
    # equal adjacent pair: apply the defining relation
    for i in range(len(mono) - 1):
        if mono[i] == mono[i + 1]:
            a = mono[i]
            rest = mono[:i] + mono[i + 2 :]
            out = {}
            for j in range(1, a + 1):
                # Q_a^2 = -2 sum_{j=1}^{a} (-1)^j Q_{a+j} Q_{a-j}
                repl = _gens(rest + (a + j, a - j))
                for lam, c in straighten_monomial(repl).items():
                    _iadd(out, lam, -2 * (-1) ** j * c)
            return out
    # strictly decreasing: peel off the Pfaffian expansion of Q_mono
    out = {mono: 1}
    for m, c in pf_expansion(mono).items():
        if m == mono:
            continue
        for lam, c2 in straighten_monomial(m).items():
            _iadd(out, lam, -c * c2)
    return out


# ---------------------------------------------------------------------------
# GammaElement
# ---------------------------------------------------------------------------


class GammaElement:
    """A finite combination sum_lambda f_lambda(x,y,t,...) Q_lambda."""

    __slots__ = ("combo",)

    def __init__(self, combo=None):
        self.combo = {}
        if combo:
            for lam, coeff in combo.items():
                coeff = Polynomial.of(coeff)
                if coeff:
                    self.combo[tuple(lam)] = coeff

    @staticmethod
    def zero():
        return GammaElement()

    @staticmethod
    def one():
        return GammaElement({(): 1})

    @staticmethod
    def basis(lam) -> "GammaElement":
        lam = tuple(lam)
        if not is_strict(lam):
            raise ValueError(f"{lam} is not a strict partition")
        return GammaElement({lam: 1})

    @staticmethod
    def of(value) -> "GammaElement":
        if isinstance(value, GammaElement):
            return value
        return GammaElement({(): Polynomial.of(value)})

    @staticmethod
    def from_raw(raw: dict) -> "GammaElement":
        """Straighten a dict {generator monomial: Polynomial coefficient}."""
        combo = {}
        for mono, coeff in raw.items():
            coeff = Polynomial.of(coeff)
            if not coeff:
                continue
            for lam, c in straighten_monomial(_gens(mono)).items():
                cur = combo.get(lam, Polynomial())
                combo[lam] = cur + coeff * c
        return GammaElement(combo)

    def to_raw(self) -> dict:
        raw = {}
        for lam, coeff in self.combo.items():
            for mono, c in pf_expansion(lam).items():
                cur = raw.get(mono, Polynomial())
                cur = cur + coeff * c
                if cur:
                    raw[mono] = cur
                else:
                    raw.pop(mono, None)
        return raw

    def __bool__(self):
        return bool(self.combo)

    def __eq__(self, other):
        return self.combo == GammaElement.of(other).combo

    def __neg__(self):
        return GammaElement({lam: -c for lam, c in self.combo.items()})

    def __add__(self, other):
        other = GammaElement.of(other)
        combo = dict(self.combo)
        for lam, c in other.combo.items():
            cur = combo.get(lam)
            c = c if cur is None else cur + c
            if c:
                combo[lam] = c
            else:
                combo.pop(lam, None)
        out = GammaElement()
        out.combo = combo
        return out

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-GammaElement.of(other))

    def __mul__(self, other):
        if isinstance(other, (int, Dyadic, Polynomial)):
            other = Polynomial.of(other)
            return GammaElement({lam: c * other for lam, c in self.combo.items()})
        other = GammaElement.of(other)
        raw = {}
        r2 = other.to_raw()
        for m1, c1 in self.to_raw().items():
            for m2, c2 in r2.items():
                m = _gens(m1 + m2)
                cur = raw.get(m, Polynomial())
                raw[m] = cur + c1 * c2
        return GammaElement.from_raw(raw)

    __rmul__ = __mul__

    def scale(self, d: Dyadic) -> "GammaElement":
        return self * Polynomial.const(d)

    def map_coeffs(self, fn) -> "GammaElement":
        return GammaElement({lam: fn(c) for lam, c in self.combo.items()})

    def degree(self) -> int:
        """Total degree, counting Q_k as degree k."""
        if not self.combo:
            return -1
        return max(sum(lam) + max(c.degree(), 0) for lam, c in self.combo.items())

    def graded_part(self, d: int) -> "GammaElement":
        return GammaElement(
            {lam: c.part(d - sum(lam)) for lam, c in self.combo.items() if d >= sum(lam)}
        )

    def coefficient(self, lam) -> Polynomial:
        return self.combo.get(tuple(lam), Polynomial())

    def __str__(self):
        if not self.combo:
            return "0"
        bits = []
        for lam in sorted(self.combo, key=lambda l: (sum(l), l), reverse=True):
            sym = "Q_()" if not lam else "Q_(" + ",".join(map(str, lam)) + ")"
            if not lam:
                sym = "1"
            c = self.combo[lam]
            if len(c.terms) == 1 and c == Polynomial.const(1):
                bits.append(sym)
            else:
                cs = str(c)
                if len(c.terms) > 1:
                    cs = "(" + cs + ")"
                bits.append(f"{cs}*{sym}" if lam else cs)
        return " + ".join(bits).replace("+ -", "- ")

    __repr__ = __str__


# ---------------------------------------------------------------------------
# generator series c = (Q ·) g
# ---------------------------------------------------------------------------


class GeneratorSeries:
    """A coefficient series c = (1 + s(Q-1)) * g or just g, with g a finite
    polynomial with constant term 1.

    The dyadic scale s multiplies every positive-degree generator; s = 1
    gives c = Q * g, while s = 1/2 gives the half-generator series
    P * g (P_k = Q_k/2 for k > 0, P_0 = 1).
    """

    __slots__ = ("has_q", "multiplier", "q_scale")

    def __init__(self, has_q: bool, multiplier=1, q_scale=1):
        multiplier = Polynomial.of(multiplier)
        if multiplier.constant_term() != Dyadic(1):
            raise ValueError("series multiplier must have constant term 1")
        self.has_q = has_q
        self.multiplier = multiplier
        self.q_scale = Dyadic.of(q_scale)

    def __eq__(self, other):
        return (
            isinstance(other, GeneratorSeries)
            and self.has_q == other.has_q
            and self.multiplier == other.multiplier
            and self.q_scale == other.q_scale
        )

    def coeff_raw(self, m: int) -> dict:
        """Degree-m coefficient as a raw dict {generator monomial: Polynomial}."""
        if m < 0:
            return {}
        out = {}
        if self.has_q:
            for i in range(0, m + 1):
                g = self.multiplier.part(i)
                if g:
                    mono = (m - i,) if m - i > 0 else ()
                    if mono and self.q_scale != Dyadic(1):
                        g = g * self.q_scale
                    cur = out.get(mono, Polynomial())
                    out[mono] = cur + g
        else:
            g = self.multiplier.part(m)
            if g:
                out[()] = g
        return out

    def star_multiplier(self) -> "GeneratorSeries":
        return GeneratorSeries(self.has_q, self.multiplier.star(), self.q_scale)

    def times(self, poly) -> "GeneratorSeries":
        return GeneratorSeries(
            self.has_q, self.multiplier * Polynomial.of(poly), self.q_scale
        )

    def __repr__(self):
        if not self.has_q:
            return f"({self.multiplier})"
        head = "Q*" if self.q_scale == Dyadic(1) else f"(1+{self.q_scale}(Q-1))*"
        return f"{head}({self.multiplier})"


Q_SERIES = GeneratorSeries(True, 1)
P_SERIES = GeneratorSeries(True, 1, Dyadic(1, 1))
UNIT_SERIES = GeneratorSeries(False, 1)


def series_coeff(c: GeneratorSeries, m: int) -> GammaElement:
    return GammaElement.from_raw(c.coeff_raw(m))


def q_pair(k: int, l: int, c_k: GeneratorSeries, c_l: GeneratorSeries) -> GammaElement:
    """The pair element  c(k)_k c(l)_l + 2 sum_{j=1}^{l} (-1)^j c(k)_{k+j} c(l)_{l-j}."""
    return GammaElement.from_raw(q_pair_raw(k, l, c_k, c_l))


def q_pair_raw(k: int, l: int, c_k: GeneratorSeries, c_l: GeneratorSeries) -> dict:
    # scaled series (e.g. half-generators): the whole entry is the plain
    # entry of the unscaled series times the product of the scales, which
    # is what makes the resulting Pfaffian rescale by scale^len(lam)
    scale = c_k.q_scale * c_l.q_scale
    if scale != Dyadic(1):
        c_k = GeneratorSeries(c_k.has_q, c_k.multiplier)
        c_l = GeneratorSeries(c_l.has_q, c_l.multiplier)
    out = _raw_poly_mul(c_k.coeff_raw(k), c_l.coeff_raw(l))
    for j in range(1, l + 1):
        term = _raw_poly_mul(c_k.coeff_raw(k + j), c_l.coeff_raw(l - j))
        for m, c in term.items():
            cur = out.get(m, Polynomial())
            cur = cur + c * (2 * (-1) ** j)
            if cur:
                out[m] = cur
            else:
                out.pop(m, None)
    if scale != Dyadic(1):
        out = {m: c * scale for m, c in out.items()}
    return out


def _raw_poly_mul(r1: dict, r2: dict) -> dict:
    out = {}
    for m1, c1 in r1.items():
        for m2, c2 in r2.items():
            m = _gens(m1 + m2)
            cur = out.get(m, Polynomial())
            cur = cur + c1 * c2
            if cur:
                out[m] = cur
            else:
                out.pop(m, None)
    return out


def q_lambda(lam) -> GammaElement:
    return GammaElement.basis(lam)


def p_lambda(lam) -> GammaElement:
    lam = tuple(lam)
    return GammaElement.basis(lam) * Polynomial.const(Dyadic(1, len(lam)))


# ---------------------------------------------------------------------------
# ring symmetries
# ---------------------------------------------------------------------------


def _generator_image_s0(a: int, fam: str) -> dict:
    """s_0(Q_a) = Q_a + 2 sum_{j=1}^{a} v^j Q_{a-j}, v the first variable."""
    v = Polynomial.variable(fam, 1)
    out = {(a,): Polynomial.const(1)}
    for j in range(1, a + 1):
        mono = (a - j,) if a - j > 0 else ()
        cur = out.get(mono, Polynomial())
        out[mono] = cur + 2 * v**j
    return out


def _generator_image_s1hat(a: int) -> dict:
    """s_1hat(Q_a) = Q_a + 2(x1+x2) sum_{j=1}^{a} v_{j-1} Q_{a-j},
    with v_m = sum_{i+i'=m} x1^i x2^i'."""
    x1 = Polynomial.variable("x", 1)
    x2 = Polynomial.variable("x", 2)
    out = {(a,): Polynomial.const(1)}
    for j in range(1, a + 1):
        vm = Polynomial()
        for i in range(j):
            vm = vm + x1**i * x2 ** (j - 1 - i)
        mono = (a - j,) if a - j > 0 else ()
        cur = out.get(mono, Polynomial())
        out[mono] = cur + 2 * (x1 + x2) * vm
    return out


def apply_symmetry(op, e: GammaElement) -> GammaElement:
    """Apply a ring symmetry.  op is one of
    ("s", i, fam) for i >= 1 -- swap fam_i and fam_{i+1}, fixing the Q_k;
    ("s0", fam)              -- negate fam_1 and rewrite the Q_k;
    ("s1hat",)               -- the type-D swap x_1 -> -x_2, x_2 -> -x_1.
    """
    kind = op[0]
    if kind == "s":
        _, i, fam = op
        sub = {
            (fam, i): Polynomial.variable(fam, i + 1),
            (fam, i + 1): Polynomial.variable(fam, i),
        }
        return e.map_coeffs(lambda c: c.substitute(sub))
    if kind == "s0":
        fam = op[1]
        sub = {(fam, 1): -Polynomial.variable(fam, 1)}
        image = lambda a: _generator_image_s0(a, fam)
    elif kind == "s1hat":
        sub = {
            ("x", 1): -Polynomial.variable("x", 2),
            ("x", 2): -Polynomial.variable("x", 1),
        }
        image = _generator_image_s1hat
    else:
        raise ValueError(f"unknown symmetry {op!r}")
    out_raw = {}
    for mono, coeff in e.to_raw().items():
        term = {(): coeff.substitute(sub)}
        for a in mono:
            term = _raw_poly_mul(term, image(a))
        for m, c in term.items():
            cur = out_raw.get(m, Polynomial())
            out_raw[m] = cur + c
    return GammaElement.from_raw(out_raw)


# ---------------------------------------------------------------------------
# specialization oracles
# ---------------------------------------------------------------------------


def _max_generator_index(e: GammaElement) -> int:
    best = 0
    for mono in e.to_raw():
        if mono:
            best = max(best, mono[0])
    return best


def substitute_q(e: GammaElement, series: Polynomial) -> Polynomial:
    """Substitute a concrete power series A (with A A* = 1 where it matters)
    for Q: each generator Q_m becomes the degree-m part of A."""
    out = Polynomial()
    for mono, coeff in e.to_raw().items():
        term = coeff
        for a in mono:
            term = term * series.part(a)
        out = out + term
    return out


def symfun_series(n_vars: int, bound: int) -> Polynomial:
    """prod_{i=1}^{N} (1+z_i)/(1-z_i), truncated at total degree `bound`."""
    from .polycore import series_inverse

    num = Polynomial.const(1)
    den = Polynomial.const(1)
    for i in range(1, n_vars + 1):
        zi = Polynomial.variable("z", i)
        num = num * (1 + zi)
        den = den * (1 - zi)
    return (num * series_inverse(den, bound)).truncate(bound)


def negt_series(nu, bound: int) -> Polynomial:
    """prod_i (1 - t_{nu_i})/(1 + t_{nu_i}), truncated at total degree `bound`."""
    from .polycore import series_inverse

    num = Polynomial.const(1)
    den = Polynomial.const(1)
    for i in nu:
        ti = Polynomial.variable("t", i)
        num = num * (1 - ti)
        den = den * (1 + ti)
    return (num * series_inverse(den, bound)).truncate(bound)


def specialize_oracle(e: GammaElement, mode) -> Polynomial:
    """Faithful specializations of Gamma.

    mode = ("symfun", N, D): Q -> prod_{i<=N} (1+z_i)/(1-z_i) up to degree D;
    mode = ("negt", nu):     Q -> prod_i (1-t_{nu_i})/(1+t_{nu_i}).
    """
    if mode[0] == "symfun":
        _, n_vars, bound = mode
        if bound < e.degree():
            raise TruncationTooSmall(
                f"degree {e.degree()} element needs truncation >= that, got {bound}"
            )
        return substitute_q(e, symfun_series(n_vars, bound))
    if mode[0] == "negt":
        nu = mode[1]
        bound = _max_generator_index(e)
        return substitute_q(e, negt_series(nu, bound))
    raise ValueError(f"unknown specialization mode {mode!r}")
