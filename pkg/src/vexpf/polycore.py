"""Exact sparse multivariate polynomials over dyadic rationals.

Everything downstream (basis elements, Pfaffians, divided differences)
stores its scalars here.  Coefficients are dyadic rationals n/2^e: the
only divisions the algorithms ever perform are by powers of 2 and by
monic-ish linear forms, so restricting the denominator catches illegal
divisions early instead of silently producing a rational.

Variables come in six families, printed in the fixed order
x < y < t < z < h < u (then by index).  A variable is a plain tuple
``(family, index)`` with index >= 1.
"""

from __future__ import annotations

FAMILIES = ("x", "y", "t", "z", "h", "u")
_FAM_RANK = {f: i for i, f in enumerate(FAMILIES)}


class NotDivisible(ArithmeticError):
    """Raised when an exact division does not come out exact."""


def var(family: str, index: int) -> tuple[str, int]:
    if family not in _FAM_RANK:
        raise ValueError(f"unknown variable family {family!r}")
    if index < 1:
        raise ValueError("variable index must be >= 1")
    return (family, index)


def _var_key(v):
    return (_FAM_RANK[v[0]], v[1])


class Dyadic:
    """A rational number num / 2**log2den in lowest terms.

    Canonical form: log2den >= 0, and num is odd whenever log2den > 0;
    zero is stored as (0, 0).
    """

    __slots__ = ("num", "log2den")

    def __init__(self, num: int, log2den: int = 0):
        if log2den < 0:
            num <<= -log2den
            log2den = 0
        if num == 0:
            log2den = 0
        else:
            while log2den > 0 and num % 2 == 0:
                num //= 2
                log2den -= 1
        self.num = num
        self.log2den = log2den

    @staticmethod
    def of(value) -> "Dyadic":
        if isinstance(value, Dyadic):
            return value
        if isinstance(value, int):
            return Dyadic(value)
        raise TypeError(f"cannot make a Dyadic out of {value!r}")

    def __bool__(self):
        return self.num != 0

    @staticmethod
    def _coerce(value):
        try:
            return Dyadic.of(value)
        except TypeError:
            return None

    def __eq__(self, other):
        other = Dyadic._coerce(other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.log2den == other.log2den

    def __hash__(self):
        return hash((self.num, self.log2den))

    def __neg__(self):
        return Dyadic(-self.num, self.log2den)

    def __add__(self, other):
        other = Dyadic._coerce(other)
        if other is None:
            return NotImplemented
        e = max(self.log2den, other.log2den)
        return Dyadic(
            (self.num << (e - self.log2den)) + (other.num << (e - other.log2den)), e
        )

    __radd__ = __add__

    def __sub__(self, other):
        other = Dyadic._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = Dyadic._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = Dyadic._coerce(other)
        if other is None:
            return NotImplemented
        return Dyadic(self.num * other.num, self.log2den + other.log2den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = Dyadic.of(other)
        if other.num == 0:
            raise ZeroDivisionError
        # strip the 2-part of the divisor; the odd part must divide exactly
        odd = other.num
        twos = 0
        while odd % 2 == 0:
            odd //= 2
            twos += 1
        if self.num % odd != 0:
            raise NotDivisible(f"{self} is not divisible by {other}")
        return Dyadic(self.num // odd, self.log2den + twos - other.log2den)

    def is_integer(self) -> bool:
        return self.log2den == 0

    def __int__(self):
        if self.log2den != 0:
            raise NotDivisible(f"{self} is not an integer")
        return self.num

    def __repr__(self):
        if self.log2den == 0:
            return str(self.num)
        return f"{self.num}/{1 << self.log2den}"


_ONE = Dyadic(1)

# A monomial is a tuple of ((family, index), exponent) pairs, sorted by
# variable, with all exponents positive.  The empty tuple is 1.


def _mono_sorted(pairs):
    return tuple(sorted(pairs, key=lambda p: _var_key(p[0])))


def _mono_degree(mono):
    return sum(e for _, e in mono)


def _mono_mul(m1, m2):
    if not m1:
        return m2
    if not m2:
        return m1
    exps = dict(m1)
    for v, e in m2:
        exps[v] = exps.get(v, 0) + e
    return _mono_sorted(exps.items())


def _mono_key(mono):
    """Graded-lex sort key (higher = bigger).

    Pairs are listed from the earliest variable outward with negated
    variable keys, so plain tuple comparison reproduces lex order even
    when the two monomials involve different variables.
    """
    pairs = sorted(((_var_key(v), e) for v, e in mono), key=lambda p: p[0])
    return (
        _mono_degree(mono),
        tuple(((-r, -i), e) for (r, i), e in pairs),
    )


class Polynomial:
    """Sparse polynomial: a map from monomials to nonzero Dyadic coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for mono, coeff in terms.items() if isinstance(terms, dict) else terms:
                coeff = Dyadic.of(coeff)
                if coeff:
                    mono = tuple((v, e) for v, e in mono if e)
                    acc = self.terms.get(mono)
                    coeff = coeff if acc is None else acc + coeff
                    if coeff:
                        self.terms[mono] = coeff
                    else:
                        del self.terms[mono]

    @staticmethod
    def const(c) -> "Polynomial":
        p = Polynomial()
        c = Dyadic.of(c)
        if c:
            p.terms[()] = c
        return p

    @staticmethod
    def variable(family: str, index: int) -> "Polynomial":
        p = Polynomial()
        p.terms[((var(family, index), 1),)] = _ONE
        return p

    @staticmethod
    def of(value) -> "Polynomial":
        if isinstance(value, Polynomial):
            return value
        return Polynomial.const(value)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return self.terms == Polynomial.of(other).terms

    def __neg__(self):
        p = Polynomial()
        p.terms = {m: -c for m, c in self.terms.items()}
        return p

    def __add__(self, other):
        other = Polynomial.of(other)
        p = Polynomial()
        p.terms = dict(self.terms)
        for m, c in other.terms.items():
            acc = p.terms.get(m)
            c = c if acc is None else acc + c
            if c:
                p.terms[m] = c
            else:
                p.terms.pop(m, None)
        return p

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-Polynomial.of(other))

    def __rsub__(self, other):
        return Polynomial.of(other) + (-self)

    def __mul__(self, other):
        other = Polynomial.of(other)
        p = Polynomial()
        acc = p.terms
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                c = c1 * c2
                old = acc.get(m)
                c = c if old is None else old + c
                if c:
                    acc[m] = c
                else:
                    del acc[m]
        return p

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Polynomial.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def degree(self) -> int:
        """Total degree; the zero polynomial gets -1."""
        if not self.terms:
            return -1
        return max(_mono_degree(m) for m in self.terms)

    def part(self, d: int) -> "Polynomial":
        """The homogeneous component of total degree d."""
        p = Polynomial()
        p.terms = {m: c for m, c in self.terms.items() if _mono_degree(m) == d}
        return p

    def truncate(self, d: int) -> "Polynomial":
        """Drop all terms of total degree > d."""
        p = Polynomial()
        p.terms = {m: c for m, c in self.terms.items() if _mono_degree(m) <= d}
        return p

    def star(self) -> "Polynomial":
        """Multiply the degree-d component by (-1)^d."""
        p = Polynomial()
        p.terms = {
            m: (c if _mono_degree(m) % 2 == 0 else -c) for m, c in self.terms.items()
        }
        return p

    def substitute(self, mapping) -> "Polynomial":
        """Simultaneously substitute polynomials for variables.

        mapping: dict from (family, index) to Polynomial (or int).
        Unmapped variables pass through.
        """
        out = Polynomial()
        for mono, coeff in self.terms.items():
            term = Polynomial.const(coeff)
            for v, e in mono:
                if v in mapping:
                    term = term * (Polynomial.of(mapping[v]) ** e)
                else:
                    term = term * Polynomial({((v, e),): _ONE})
            out = out + term
        return out

    def variables(self):
        seen = set()
        for mono in self.terms:
            for v, _ in mono:
                seen.add(v)
        return seen

    def constant_term(self) -> Dyadic:
        return self.terms.get((), Dyadic(0))

    def leading(self):
        mono = max(self.terms, key=_mono_key)
        return mono, self.terms[mono]

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for mono in sorted(self.terms, key=_mono_key, reverse=True):
            coeff = self.terms[mono]
            factors = [
                f"{v[0]}{v[1]}" + (f"^{e}" if e > 1 else "") for v, e in mono
            ]
            if not factors:
                body = repr(coeff)
            elif coeff == _ONE:
                body = "*".join(factors)
            elif coeff == Dyadic(-1):
                body = "-" + "*".join(factors)
            else:
                body = repr(coeff) + "*" + "*".join(factors)
            bits.append(body)
        out = " + ".join(bits)
        return out.replace("+ -", "- ")

    __repr__ = __str__


def exact_divide(p: Polynomial, d: Polynomial) -> Polynomial:
    """Return q with q*d == p, or raise NotDivisible.

    Plain leading-term cancellation in graded-lex order; when an exact
    quotient exists this always finds it.
    """
    if not d:
        raise ZeroDivisionError("division by the zero polynomial")
    q = Polynomial()
    rem = p
    d_mono, d_coeff = d.leading()
    d_exps = dict(d_mono)
    while rem:
        r_mono, r_coeff = rem.leading()
        r_exps = dict(r_mono)
        for v, e in d_exps.items():
            if r_exps.get(v, 0) < e:
                raise NotDivisible(f"({p}) is not divisible by ({d})")
        qm = _mono_sorted(
            (v, e) for v, e in
            ((v, r_exps.get(v, 0) - d_exps.get(v, 0)) for v in r_exps)
            if e
        )
        qc = r_coeff / d_coeff  # raises NotDivisible if not dyadic
        qterm = Polynomial({qm: qc})
        q = q + qterm
        rem = rem - qterm * d
    return q


def series_inverse(p: Polynomial, bound: int) -> Polynomial:
    """Invert a series with unit constant term, truncated at total degree `bound`.

    Solves degree by degree: if p = c0 + p1 + p2 + ... then the degree-d
    piece of the inverse is -(1/c0) * sum_{j=1..d} p_j * inv_{d-j}.
    """
    c0 = p.constant_term()
    if not c0:
        raise NotDivisible("cannot invert a series with zero constant term")
    inv_c0 = _ONE / c0
    parts = {0: Polynomial.const(inv_c0)}
    p_parts = {d: p.part(d) for d in range(1, bound + 1)}
    for d in range(1, bound + 1):
        acc = Polynomial()
        for j in range(1, d + 1):
            pj = p_parts.get(j)
            if pj and pj.terms:
                acc = acc + pj * parts[d - j]
        parts[d] = Polynomial.const(-inv_c0) * acc
    total = Polynomial()
    for piece in parts.values():
        total = total + piece
    return total
