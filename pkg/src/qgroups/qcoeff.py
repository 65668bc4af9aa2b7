"""Exact coefficient arithmetic: Laurent polynomials in q, the rational
function field k(q), q-combinatorics, and evaluation at q = 1 or at a
primitive odd root of unity via cyclotomic residues."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .errors import PoleAtSpecialization


class LaurentPoly:
    """Laurent polynomial in q with Fraction coefficients.

    Stored as {exponent: coefficient} with no zero coefficients.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        if terms is None:
            terms = {}
        self.terms = {e: c for e, c in terms.items() if c != 0}

    @classmethod
    def const(cls, c) -> LaurentPoly:
        c = Fraction(c)
        return cls({0: c} if c else {})

    @classmethod
    def q_power(cls, e, c=1) -> LaurentPoly:
        """Monomial c*q^e; e may be a Fraction (values in k(q^(1/D)))."""
        c = Fraction(c)
        e = Fraction(e)
        key = int(e) if e.denominator == 1 else e
        return cls({key: c} if c else {})

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == {0: Fraction(1)}

    def min_exp(self) -> int:
        return min(self.terms)

    def max_exp(self) -> int:
        return max(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def __add__(self, other) -> LaurentPoly:
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> LaurentPoly:
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other)
        return self + (-other)

    def __rsub__(self, other) -> LaurentPoly:
        return (-self) + other

    def __mul__(self, other) -> LaurentPoly:
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return LaurentPoly()
            return LaurentPoly({e: v * c for e, v in self.terms.items()})
        out: dict[int, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> LaurentPoly:
        if n < 0:
            raise ValueError("negative power of a LaurentPoly; use QScalar")
        out = LaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shift(self, k: int) -> LaurentPoly:
        """Multiply by q^k."""
        return LaurentPoly({e + k: c for e, c in self.terms.items()})

    def subs_power(self, d: int) -> LaurentPoly:
        """Substitute q -> q^d."""
        return LaurentPoly({e * d: c for e, c in self.terms.items()})

    def bar(self) -> LaurentPoly:
        """Substitute q -> q^-1."""
        return LaurentPoly({-e: c for e, c in self.terms.items()})

    def divexact(self, other: LaurentPoly) -> LaurentPoly:
        """Exact division; raises ValueError on nonzero remainder."""
        q, r = _poly_divmod(self, other)
        if not r.is_zero():
            raise ValueError("inexact Laurent division")
        return q

    def eval_at_one(self) -> Fraction:
        return sum(self.terms.values(), Fraction(0))

    def derivative(self) -> LaurentPoly:
        return LaurentPoly({e - 1: c * e for e, c in self.terms.items() if e != 0})

    def to_json(self):
        return [
            [e if isinstance(e, int) else str(e), c.numerator, c.denominator]
            for e, c in sorted(self.terms.items())
        ]

    @classmethod
    def from_json(cls, data) -> LaurentPoly:
        out = {}
        for e, n, d in data:
            e = Fraction(e)
            out[int(e) if e.denominator == 1 else e] = Fraction(int(n), int(d))
        return cls(out)

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            if e == 0:
                parts.append(str(c))
            else:
                mono = "q" if e == 1 else f"q^{e}"
                if c == 1:
                    parts.append(mono)
                elif c == -1:
                    parts.append(f"-{mono}")
                else:
                    parts.append(f"{c}*{mono}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out


def _poly_divmod(a: LaurentPoly, b: LaurentPoly):
    """Division with remainder after clearing negative exponents."""
    if b.is_zero():
        raise ZeroDivisionError("division by zero LaurentPoly")
    if a.is_zero():
        return LaurentPoly(), LaurentPoly()
    sa = -min(0, a.min_exp())
    sb = -min(0, b.min_exp())
    # (a q^sa) = (b q^sb) * Q + R  with everything an ordinary polynomial,
    # then undo the shifts.
    num = a.shift(sa).terms
    den = b.shift(sb)
    dmax = den.max_exp()
    dlead = den.terms[dmax]
    quo: dict[int, Fraction] = {}
    rem = dict(num)
    while rem and max(rem) >= dmax:
        e = max(rem)
        c = rem[e] / dlead
        quo[e - dmax] = c
        for de, dc in den.terms.items():
            k = e - dmax + de
            s = rem.get(k, 0) - c * dc
            if s:
                rem[k] = s
            else:
                rem.pop(k, None)
    return (
        LaurentPoly(quo).shift(sb - sa),
        LaurentPoly(rem).shift(-sa),
    )


def _poly_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Monic gcd in Q[q] of the polynomials q^k*a, q^k*b (units q^k dropped)."""
    a = a.shift(-a.min_exp()) if not a.is_zero() else a
    b = b.shift(-b.min_exp()) if not b.is_zero() else b
    while not b.is_zero():
        _, r = _poly_divmod(a, b)
        a, b = b, r
        if not b.is_zero():
            b = b.shift(-b.min_exp())
    if a.is_zero():
        return LaurentPoly.const(1)
    return a * (1 / a.terms[a.max_exp()])


class QScalar:
    """Element of k(q): a reduced fraction of Laurent polynomials.

    Canonical form: gcd(num, den) = 1, den has lowest exponent 0 and its
    highest-exponent coefficient is 1.  Equality is plain comparison.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly | None = None, *, reduce: bool = True):
        if den is None:
            den = LaurentPoly.const(1)
        if den.is_zero():
            raise ZeroDivisionError("QScalar with zero denominator")
        if reduce:
            num, den = _reduce(num, den)
        self.num = num
        self.den = den

    @classmethod
    def from_int(cls, n) -> QScalar:
        return cls(LaurentPoly.const(n), reduce=False)

    @classmethod
    def from_laurent(cls, p: LaurentPoly) -> QScalar:
        return cls(p, reduce=False)

    @classmethod
    def q_power(cls, e, c=1) -> QScalar:
        return cls(LaurentPoly.q_power(e, c), reduce=False)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def is_laurent(self) -> bool:
        return self.den.is_one()

    def as_laurent(self) -> LaurentPoly:
        if not self.den.is_one():
            raise ValueError(f"not a Laurent polynomial: {self}")
        return self.num

    def is_unit_monomial(self) -> bool:
        """True when the value is +-q^k."""
        if not self.den.is_one() or len(self.num.terms) != 1:
            return False
        c = next(iter(self.num.terms.values()))
        return c == 1 or c == -1

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other) -> QScalar:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return QScalar(self.num + other.num, self.den)
        return QScalar(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> QScalar:
        out = QScalar.__new__(QScalar)
        out.num = -self.num
        out.den = self.den
        return out

    def __sub__(self, other) -> QScalar:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> QScalar:
        return (-self) + other

    def __mul__(self, other) -> QScalar:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        # unit-monomial fast paths: no re-reduction needed
        if other.den.is_one() and len(other.num.terms) == 1:
            ((e, c),) = other.num.terms.items()
            out = QScalar.__new__(QScalar)
            out.num = LaurentPoly({k + e: v * c for k, v in self.num.terms.items()})
            out.den = self.den
            return out
        if self.den.is_one() and len(self.num.terms) == 1:
            ((e, c),) = self.num.terms.items()
            out = QScalar.__new__(QScalar)
            out.num = LaurentPoly({k + e: v * c for k, v in other.num.terms.items()})
            out.den = other.den
            return out
        return QScalar(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inv(self) -> QScalar:
        if self.is_zero():
            raise ZeroDivisionError("inverting zero QScalar")
        return QScalar(self.den, self.num)

    def __truediv__(self, other) -> QScalar:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other) -> QScalar:
        return _coerce(other) * self.inv()

    def __pow__(self, n: int) -> QScalar:
        if n < 0:
            return self.inv() ** (-n)
        out = QScalar.from_int(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def bar(self) -> QScalar:
        """Substitute q -> q^-1."""
        return QScalar(self.num.bar(), self.den.bar())

    def divisible_by(self, p: LaurentPoly, power: int = 1) -> bool:
        """Whether the value lies in p^power * k[q, q^-1]."""
        if self.is_zero():
            return True
        if not self.den.is_one():
            return False
        try:
            r = self.num
            for _ in range(power):
                r = r.divexact(p)
            return True
        except ValueError:
            return False

    def to_json(self):
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data) -> QScalar:
        return cls(LaurentPoly.from_json(data["num"]), LaurentPoly.from_json(data["den"]))

    def __repr__(self) -> str:
        return f"QScalar({self})"

    def __str__(self) -> str:
        if self.den.is_one():
            return str(self.num)
        return f"({self.num})/({self.den})"


def _coerce(x):
    if isinstance(x, QScalar):
        return x
    if isinstance(x, (int, Fraction)):
        return QScalar(LaurentPoly.const(x), reduce=False)
    if isinstance(x, LaurentPoly):
        return QScalar(x, reduce=False)
    return NotImplemented


def _reduce(num: LaurentPoly, den: LaurentPoly):
    if num.is_zero():
        return LaurentPoly(), LaurentPoly.const(1)
    g = _poly_gcd(num, den)
    if not g.is_one():
        num = num.divexact(g)
        den = den.divexact(g)
    # Normalize: den starts at exponent 0 with monic top coefficient.
    k = den.min_exp()
    if k:
        num = num.shift(-k)
        den = den.shift(-k)
    lead = den.terms[den.max_exp()]
    if lead != 1:
        c = 1 / lead
        num = num * c
        den = den * c
    return num, den


ZERO = QScalar.from_int(0)
ONE = QScalar.from_int(1)


# --- q-combinatorics ------------------------------------------------------


def q_number(n: int, d: int = 1) -> LaurentPoly:
    """Symmetric q-integer [n] in q^d: (q^(nd) - q^(-nd)) / (q^d - q^(-d))."""
    if n < 0:
        return -q_number(-n, d)
    return LaurentPoly({d * (n - 1 - 2 * k): Fraction(1) for k in range(n)})


def q_factorial(n: int, d: int = 1) -> LaurentPoly:
    if n < 0:
        raise ValueError("q-factorial of a negative integer")
    out = LaurentPoly.const(1)
    for r in range(1, n + 1):
        out = out * q_number(r, d)
    return out


def q_binomial(n: int, k: int, d: int = 1) -> LaurentPoly:
    """Gaussian binomial [n choose k] in q^d, with the standard extension
    [n choose k] = (-1)^k [k-n-1 choose k] for negative n."""
    if k < 0:
        raise ValueError("negative lower index")
    num = LaurentPoly.const(1)
    for s in range(1, k + 1):
        num = num * q_number(n - s + 1, d)
    return num.divexact(q_factorial(k, d))


def gauss_number(n: int, d: int = 1) -> LaurentPoly:
    """One-sided q-integer (n) in q^d: 1 + q^d + ... + q^((n-1)d)."""
    if n < 0:
        raise ValueError("negative gauss number")
    return LaurentPoly({d * k: Fraction(1) for k in range(n)})


def gauss_binomial(n: int, k: int, d: int = 1) -> LaurentPoly:
    """One-sided Gaussian binomial (n choose k) in q^d for n >= 0."""
    num = LaurentPoly.const(1)
    for s in range(1, k + 1):
        num = num * gauss_number(n - s + 1, d)
    den = LaurentPoly.const(1)
    for s in range(1, k + 1):
        den = den * gauss_number(s, d)
    return num.divexact(den)


# --- cyclotomic arithmetic ------------------------------------------------


@lru_cache(maxsize=None)
def cyclotomic_poly(ell: int) -> tuple[Fraction, ...]:
    """Dense coefficients (low to high) of the ell-th cyclotomic polynomial."""
    if ell < 1:
        raise ValueError("ell must be positive")
    x_pow = LaurentPoly({ell: Fraction(1), 0: Fraction(-1)})
    for d in range(1, ell):
        if ell % d == 0:
            phi_d = LaurentPoly({e: c for e, c in enumerate(cyclotomic_poly(d))})
            x_pow = x_pow.divexact(phi_d)
    deg = x_pow.max_exp()
    return tuple(x_pow.terms.get(e, Fraction(0)) for e in range(deg + 1))


class CyclotomicScalar:
    """Element of Q[x]/Phi_ell(x), x a primitive ell-th root of unity."""

    __slots__ = ("ell", "coeffs")

    def __init__(self, ell: int, coeffs):
        phi = cyclotomic_poly(ell)
        deg = len(phi) - 1
        coeffs = list(coeffs)
        if len(coeffs) > deg:
            coeffs = _cyclo_reduce(coeffs, phi)
        coeffs += [Fraction(0)] * (deg - len(coeffs))
        self.ell = ell
        self.coeffs = tuple(Fraction(c) for c in coeffs)

    @classmethod
    def from_laurent(cls, p: LaurentPoly, ell: int) -> CyclotomicScalar:
        dense = [Fraction(0)] * ell
        for e, c in p.terms.items():
            if not isinstance(e, int):
                raise ValueError("fractional q-exponents cannot be evaluated at a root of unity")
            dense[e % ell] += c
        return cls(ell, dense)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = CyclotomicScalar(self.ell, [Fraction(other)])
        if not isinstance(other, CyclotomicScalar):
            return NotImplemented
        return self.ell == other.ell and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ell, self.coeffs))

    def __add__(self, other) -> CyclotomicScalar:
        other = self._coerce(other)
        return CyclotomicScalar(self.ell, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self) -> CyclotomicScalar:
        return CyclotomicScalar(self.ell, [-c for c in self.coeffs])

    def __sub__(self, other) -> CyclotomicScalar:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> CyclotomicScalar:
        return (-self) + other

    def __mul__(self, other) -> CyclotomicScalar:
        other = self._coerce(other)
        n = len(self.coeffs)
        prod = [Fraction(0)] * (2 * n - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        prod[i + j] += a * b
        return CyclotomicScalar(self.ell, prod)

    __rmul__ = __mul__

    def inv(self) -> CyclotomicScalar:
        if self.is_zero():
            raise ZeroDivisionError("inverting zero cyclotomic element")
        phi = list(cyclotomic_poly(self.ell))
        inv = _poly_mod_inverse(list(self.coeffs), phi)
        return CyclotomicScalar(self.ell, inv)

    def __truediv__(self, other) -> CyclotomicScalar:
        return self * self._coerce(other).inv()

    def _coerce(self, other) -> CyclotomicScalar:
        if isinstance(other, CyclotomicScalar):
            if other.ell != self.ell:
                raise ValueError("mixed cyclotomic orders")
            return other
        return CyclotomicScalar(self.ell, [Fraction(other)])

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        bits = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                bits.append(str(c))
            else:
                mono = "eps" if i == 1 else f"eps^{i}"
                bits.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(bits)

    def __repr__(self) -> str:
        return f"CyclotomicScalar(ell={self.ell}, {self})"


def _cyclo_reduce(coeffs, phi):
    coeffs = list(coeffs)
    deg = len(phi) - 1
    for e in range(len(coeffs) - 1, deg - 1, -1):
        c = coeffs[e]
        if c:
            for j, p in enumerate(phi):
                coeffs[e - deg + j] -= c * p
    return coeffs[:deg]


def _poly_mod_inverse(a, m):
    """Inverse of a modulo m in Q[x] by the extended Euclidean algorithm."""

    def trim(p):
        while p and p[-1] == 0:
            p.pop()
        return p

    def divmod_(u, v):
        u = list(u)
        quo = [Fraction(0)] * max(1, len(u) - len(v) + 1)
        while len(trim(u)) >= len(v):
            shift = len(u) - len(v)
            c = u[-1] / v[-1]
            quo[shift] = c
            for j, vc in enumerate(v):
                u[shift + j] -= c * vc
            trim(u)
        return trim(quo), u

    r0, r1 = trim(list(m)), trim(list(a))
    s0, s1 = [], [Fraction(1)]
    while r1:
        q, r = divmod_(r0, r1)
        # s_next = s0 - q*s1
        prod = [Fraction(0)] * (len(q) + len(s1))
        for i, qc in enumerate(q):
            for j, sc in enumerate(s1):
                prod[i + j] += qc * sc
        s_next = [Fraction(0)] * max(len(s0), len(prod))
        for i, c in enumerate(s0):
            s_next[i] += c
        for i, c in enumerate(prod):
            s_next[i] -= c
        r0, r1 = r1, trim(r)
        s0, s1 = s1, trim(s_next)
    if len(r0) != 1:
        raise ZeroDivisionError("element not invertible modulo Phi_ell")
    return [c / r0[0] for c in s0]


# --- specialization -------------------------------------------------------


def specialize_at_one(x: QScalar) -> Fraction:
    """Exact image under q -> 1; PoleAtSpecialization if the (reduced)
    denominator vanishes there."""
    d = x.den.eval_at_one()
    if d == 0:
        raise PoleAtSpecialization(f"pole at q=1: {x}")
    return x.num.eval_at_one() / d


def specialize_at_root(x: QScalar, ell: int) -> CyclotomicScalar:
    """Exact image under q -> primitive ell-th root of unity (ell odd)."""
    if ell < 1 or ell % 2 == 0:
        raise ValueError("ell must be a positive odd integer")
    den = CyclotomicScalar.from_laurent(x.den, ell)
    if den.is_zero():
        raise PoleAtSpecialization(f"pole at primitive {ell}-th root of unity: {x}")
    num = CyclotomicScalar.from_laurent(x.num, ell)
    return num / den


def specialize_scalar(x: QScalar, at):
    """Dispatch on the target point: "one" (or 1) for q=1, an odd integer
    ell > 1 for a primitive ell-th root of unity."""
    if at in ("one", "1", 1):
        return specialize_at_one(x)
    if isinstance(at, int):
        return specialize_at_root(x, at)
    raise ValueError(f"unknown specialization point {at!r}")
