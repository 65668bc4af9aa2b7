"""Coproduct, counit, and antipode for the algebra presentations, tensor
square arithmetic, and exhaustive Hopf-axiom checking at bounded degree."""

from __future__ import annotations

import random

from .cartan import vec_scale, vec_sub
from .errors import AxiomFailure, PresentationMismatch
from .pbw import (
    ONE,
    AlgebraElement,
    PBWMonomial,
    Presentation,
    QScalar,
    _add_term,
    monomial_one,
    presentation,
    root_vector_word,
)


class TensorElement:
    """Finite combination of pairs of PBW monomials; multiplication is
    componentwise (the tensor-square algebra)."""

    __slots__ = ("pres", "terms")

    def __init__(self, pres: Presentation, terms=None):
        self.pres = pres
        self.terms = {}
        if terms:
            for k, c in terms.items():
                if not c.is_zero():
                    self.terms[k] = c

    @classmethod
    def one(cls, pres) -> TensorElement:
        m = monomial_one(pres)
        return cls(pres, {(m, m): ONE})

    @classmethod
    def of(cls, a: AlgebraElement, b: AlgebraElement) -> TensorElement:
        if a.pres is not b.pres:
            raise PresentationMismatch("tensor factors from different presentations")
        out: dict = {}
        for m1, c1 in a.terms.items():
            for m2, c2 in b.terms.items():
                _add_term(out, (m1, m2), c1 * c2)
        return cls(a.pres, out)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.pres is other.pres and self.terms == other.terms

    def __add__(self, other) -> TensorElement:
        out = dict(self.terms)
        for k, c in other.terms.items():
            _add_term(out, k, c)
        return TensorElement(self.pres, out)

    def __neg__(self) -> TensorElement:
        return TensorElement(self.pres, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other) -> TensorElement:
        return self + (-other)

    def __mul__(self, other) -> TensorElement:
        if isinstance(other, (int, QScalar)):
            c = other if isinstance(other, QScalar) else QScalar.from_int(other)
            return TensorElement(self.pres, {k: v * c for k, v in self.terms.items()})
        out: dict = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                left = AlgebraElement(self.pres, {a1: ONE}) * AlgebraElement(self.pres, {a2: ONE})
                right = AlgebraElement(self.pres, {b1: ONE}) * AlgebraElement(self.pres, {b2: ONE})
                for m1, d1 in left.terms.items():
                    for m2, d2 in right.terms.items():
                        _add_term(out, (m1, m2), c1 * c2 * d1 * d2)
        return TensorElement(self.pres, out)

    __rmul__ = __mul__

    def flip(self) -> TensorElement:
        return TensorElement(self.pres, {(b, a): c for (a, b), c in self.terms.items()})

    def apply(self, fn_left, fn_right) -> TensorElement:
        """Map AlgebraElement -> AlgebraElement functions over both slots."""
        out: dict = {}
        for (a, b), c in self.terms.items():
            left = fn_left(AlgebraElement(self.pres, {a: ONE}))
            right = fn_right(AlgebraElement(self.pres, {b: ONE}))
            for m1, d1 in left.terms.items():
                for m2, d2 in right.terms.items():
                    _add_term(out, (m1, m2), c * d1 * d2)
        return TensorElement(self.pres, out)

    def contract(self) -> AlgebraElement:
        """Multiply the two slots together (the map m: x tensor y -> xy)."""
        out = AlgebraElement.zero(self.pres)
        for (a, b), c in self.terms.items():
            out = out + c * (
                AlgebraElement(self.pres, {a: ONE}) * AlgebraElement(self.pres, {b: ONE})
            )
        return out

    def to_json(self):
        items = []
        for (a, b), c in sorted(self.terms.items()):
            items.append(
                {
                    "left": {"e": list(a.e), "mu": list(a.mu), "kappa": list(a.kappa), "f": list(a.f)},
                    "right": {"e": list(b.e), "mu": list(b.mu), "kappa": list(b.kappa), "f": list(b.f)},
                    "coeff": c.to_json(),
                }
            )
        return {"presentation": self.pres.kind, "terms": items}

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        from .pbw import _monomial_str

        return " + ".join(
            f"({c})*{_monomial_str(self.pres, a)} (x) {_monomial_str(self.pres, b)}"
            for (a, b), c in sorted(self.terms.items())
        )


def _require_coalgebra(pres: Presentation) -> None:
    if pres.kind == "dual_h":
        raise PresentationMismatch(
            "dual_h carries only the topological coproduct; use dualform"
        )


def _toral_tensor(pres, mu, kappa) -> TensorElement:
    m = PBWMonomial((0,) * pres.N, tuple(mu), tuple(kappa), (0,) * pres.N)
    return TensorElement(pres, {(m, m): ONE})


def _coproduct_simple(pres: Presentation, letter: int) -> TensorElement:
    """Coproduct of a simple generator letter (+(i+1) = E_i, -(i+1) = F_i)."""
    datum = pres.datum
    i = abs(letter) - 1
    alpha = datum.simple_roots[i]
    tau = datum.tau[i]
    n = pres.n
    zeros = (0,) * n
    if letter > 0:
        g = AlgebraElement.generator_e(pres, i)
        # E_i (x) L_tau + L_(alpha - tau) (x) E_i
        right_w = tau
        left_w = vec_sub(alpha, tau)
    else:
        g = AlgebraElement.generator_f(pres, i)
        # F_i (x) L_(-alpha - tau) + L_tau (x) F_i
        right_w = vec_sub(vec_scale(alpha, -1), tau)
        left_w = tau
    if pres.kind == "double" and letter < 0:
        # the negative Borel of the double has the K torals (alpha-exponents)
        if not datum.in_root_lattice(right_w) or not datum.in_root_lattice(left_w):
            raise PresentationMismatch("tau outside Q: no double coproduct")
        right = AlgebraElement.toral(
            pres, zeros, [int(x) for x in datum.alpha_coords(right_w)]
        )
        left = AlgebraElement.toral(pres, zeros, [int(x) for x in datum.alpha_coords(left_w)])
    else:
        right = AlgebraElement.toral_weight(pres, right_w)
        left = AlgebraElement.toral_weight(pres, left_w)
    return TensorElement.of(g, right) + TensorElement.of(left, g)


def _coproduct_root(pres: Presentation, letter: int) -> TensorElement:
    """Coproduct of a root-vector letter, by expanding into simple letters."""
    cache = pres._tables.setdefault("coproduct_root", {})
    if letter in cache:
        return cache[letter]
    r = abs(letter) - 1
    side = 1 if letter > 0 else -1
    word = root_vector_word(pres.datum, side, r)
    out = TensorElement(pres)
    for w, c in word.items():
        acc = TensorElement.one(pres)
        for x in w:
            acc = acc * _coproduct_simple(pres, x)
        out = out + acc * c
    cache[letter] = out
    return out


def coproduct(x: AlgebraElement) -> TensorElement:
    pres = x.pres
    _require_coalgebra(pres)
    out = TensorElement(pres)
    cache = pres._tables.setdefault("coproduct_mono", {})
    for m, c in x.terms.items():
        if m not in cache:
            acc = TensorElement.one(pres)
            for r in range(pres.N - 1, -1, -1):
                for _ in range(m.e[r]):
                    acc = acc * _coproduct_root(pres, r + 1)
            acc = acc * _toral_tensor(pres, m.mu, m.kappa)
            for r in range(pres.N):
                for _ in range(m.f[r]):
                    acc = acc * _coproduct_root(pres, -(r + 1))
            cache[m] = acc
        out = out + cache[m] * c
    return out


def counit(x: AlgebraElement) -> QScalar:
    total = QScalar.from_int(0)
    for m, c in x.terms.items():
        if not any(m.e) and not any(m.f):
            total = total + c
    return total


def _antipode_simple(pres: Presentation, letter: int) -> AlgebraElement:
    datum = pres.datum
    i = abs(letter) - 1
    alpha = datum.simple_roots[i]
    zeros = (0,) * pres.n
    if letter > 0:
        # S(E_i) = -L_(-alpha_i) E_i
        tor = AlgebraElement.toral_weight(pres, vec_scale(alpha, -1))
        return -(tor * AlgebraElement.generator_e(pres, i))
    # S(F_i) = -F_i L_(alpha_i); in the double the F side lives over K
    if pres.kind == "double":
        tor = AlgebraElement.toral(pres, zeros, [int(x) for x in datum.alpha_coords(alpha)])
    else:
        tor = AlgebraElement.toral_weight(pres, alpha)
    return -(AlgebraElement.generator_f(pres, i) * tor)


def _antipode_root(pres: Presentation, letter: int) -> AlgebraElement:
    cache = pres._tables.setdefault("antipode_root", {})
    if letter in cache:
        return cache[letter]
    r = abs(letter) - 1
    side = 1 if letter > 0 else -1
    word = root_vector_word(pres.datum, side, r)
    out = AlgebraElement.zero(pres)
    for w, c in word.items():
        acc = AlgebraElement.one(pres)
        for x in reversed(w):
            acc = acc * _antipode_simple(pres, x)
        out = out + c * acc
    cache[letter] = out
    return out


def antipode(x: AlgebraElement) -> AlgebraElement:
    pres = x.pres
    _require_coalgebra(pres)
    out = AlgebraElement.zero(pres)
    cache = pres._tables.setdefault("antipode_mono", {})
    for m, c in x.terms.items():
        if m not in cache:
            cache[m] = _antipode_assemble(pres, m)
        out = out + c * cache[m]
    return out


def _antipode_assemble(pres: Presentation, m: PBWMonomial) -> AlgebraElement:
    """S(E-part L K F-part) = S(F-part) S(K) S(L) S(E-part), factors reversed."""
    acc = AlgebraElement.one(pres)
    for r in range(pres.N - 1, -1, -1):
        for _ in range(m.f[r]):
            acc = acc * _antipode_root(pres, -(r + 1))
    acc = acc * AlgebraElement.toral(
        pres, [-t for t in m.mu], [-t for t in m.kappa] if pres.has_kappa else None
    )
    for r in range(pres.N):
        for _ in range(m.e[r]):
            acc = acc * _antipode_root(pres, r + 1)
    return acc


# --- tensor cube for coassociativity ---------------------------------------


def _expand_slot(pres, terms3, slot) -> dict:
    """Apply the coproduct to one slot of a dict keyed by monomial triples."""
    out: dict = {}
    for key, c in terms3.items():
        mono = key[slot]
        delta = coproduct(AlgebraElement(pres, {mono: ONE}))
        for (a, b), d in delta.terms.items():
            new = key[:slot] + (a, b) + key[slot + 1 :]
            _add_term(out, new, c * d)
    return out


def check_hopf_axioms(datum, kind: str, bound: int = 2, samples: int = 50, seed: int = 7) -> dict:
    """Verify coassociativity, the counit axioms, and both antipode axioms on
    all PBW monomials of degree <= 2 and a deterministic degree-<= bound
    sample; also spot-checks the (anti)morphism properties."""
    pres = presentation(datum, kind)
    elems = _monomial_sample(pres, bound, samples, seed)
    failures = []
    for x in elems:
        dx = coproduct(x)
        # coassociativity
        pair = {(m1, m2): c for (m1, m2), c in dx.terms.items()}
        left = _expand_slot(pres, pair, 0)
        right = _expand_slot(pres, pair, 1)
        if left != right:
            failures.append(("coassociativity", repr(x)))
        # counit axioms
        eps_left = AlgebraElement.zero(pres)
        eps_right = AlgebraElement.zero(pres)
        for (a, b), c in dx.terms.items():
            ea = counit(AlgebraElement(pres, {a: ONE}))
            eb = counit(AlgebraElement(pres, {b: ONE}))
            eps_left = eps_left + (c * ea) * AlgebraElement(pres, {b: ONE})
            eps_right = eps_right + (c * eb) * AlgebraElement(pres, {a: ONE})
        if eps_left != x or eps_right != x:
            failures.append(("counit", repr(x)))
        # antipode axioms
        lhs = dx.apply(antipode, lambda y: y).contract()
        rhs = dx.apply(lambda y: y, antipode).contract()
        target = AlgebraElement.scalar(pres, counit(x))
        if lhs != target or rhs != target:
            failures.append(("antipode", repr(x)))
    # morphism properties on pairs
    rng = random.Random(seed + 1)
    pool = elems[: min(len(elems), 8)]
    for _ in range(min(12, len(pool) * 2)):
        a, b = rng.choice(pool), rng.choice(pool)
        if coproduct(a * b) != coproduct(a) * coproduct(b):
            failures.append(("coproduct-morphism", f"{a!r} , {b!r}"))
        if antipode(a * b) != antipode(b) * antipode(a):
            failures.append(("antipode-antimorphism", f"{a!r} , {b!r}"))
        if counit(a * b) != counit(a) * counit(b):
            failures.append(("counit-morphism", f"{a!r} , {b!r}"))
    report = {"presentation": kind, "passed": not failures, "failures": failures}
    if failures:
        raise AxiomFailure(str(report))
    return report


def _monomial_sample(pres, bound: int, samples: int, seed: int):
    """All degree-<=2 PBW monomials with small torals plus a deterministic
    sample of degree-<= bound products."""
    out = []
    N, n = pres.N, pres.n
    zero_e = (0,) * N
    zeros = (0,) * n
    monos = [PBWMonomial(zero_e, zeros, zeros, zero_e)]
    singles = []
    for r in range(N):
        e = [0] * N
        e[r] = 1
        if pres.has_e:
            singles.append((tuple(e), zero_e))
        if pres.has_f:
            singles.append((zero_e, tuple(e)))
    for ee, ff in singles:
        monos.append(PBWMonomial(ee, zeros, zeros, ff))
    for ee1, ff1 in singles:
        for ee2, ff2 in singles:
            ee = tuple(a + b for a, b in zip(ee1, ee2))
            ff = tuple(a + b for a, b in zip(ff1, ff2))
            monos.append(PBWMonomial(ee, zeros, zeros, ff))
    mus = [zeros]
    if n >= 1:
        mus.append(tuple(1 if t == 0 else 0 for t in range(n)))
        mus.append(tuple(-1 if t == n - 1 else 0 for t in range(n)))
    seen = set()
    for m in monos:
        for mu in mus:
            mm = PBWMonomial(m.e, mu, m.kappa, m.f)
            if mm not in seen:
                seen.add(mm)
                out.append(AlgebraElement(pres, {mm: ONE}))
    rng = random.Random(seed)
    gens = []
    for i in range(n):
        if pres.has_e:
            gens.append(AlgebraElement.generator_e(pres, i))
        if pres.has_f:
            gens.append(AlgebraElement.generator_f(pres, i))
    gens.append(AlgebraElement.toral(pres, mus[1] if len(mus) > 1 else zeros))
    added = 0
    while added < samples:
        x = AlgebraElement.one(pres)
        for _ in range(rng.randint(2, max(2, bound))):
            x = x * rng.choice(gens)
        out.append(x)
        added += 1
    return out
