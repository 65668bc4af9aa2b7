"""PBW monomials and the straightening kernel.

Five presentations share one monomial type and one rewriting engine:

  borel_minus   L_mu, F_i            (negative quantum Borel)
  borel_plus    L_mu, E_i            (positive quantum Borel)
  double        E_i, L_mu, K_alpha, F_i   (quantum double)
  full          E_i, L_mu, F_i       (quotient of the double)
  dual_h        E_i, L_mu, F_i       (dual-side algebra: E and F commute,
                                      toral rules twisted by id +- phi,
                                      generators are the modified vectors)

Normal form: E-exponents descending in convex order * toral part * F-exponents
ascending.  Straightening tables for root-vector pairs are derived from a
letter-level reducer working directly with the defining relations together
with exact linear algebra in the Serre quotient of the free algebra (the
oracle); the monomial engine then rewrites with the cached tables.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple

from .cartan import CartanDatum, vec_add, vec_scale, vec_sub
from .errors import ConventionFailure, DegreeTooLarge, PresentationMismatch
from .qcoeff import ONE, QScalar, q_binomial

PRESENTATIONS = ("borel_minus", "borel_plus", "double", "full", "dual_h")

# Letters are signed 1-based indices: +(i+1) is an E-type letter, -(i+1) an
# F-type letter.  At the "simple" (oracle) level indices run over simple
# roots, at the engine level over positive roots in convex order.  Toral
# exponents are tracked globally at the right end of a word.


def _add_term(d: dict, key, coeff) -> None:
    s = d.get(key)
    s = coeff if s is None else s + coeff
    if s.is_zero():
        d.pop(key, None)
    else:
        d[key] = s


def _as_int(x) -> int:
    x = Fraction(x)
    if x.denominator != 1:
        raise PresentationMismatch(f"non-integral commutation exponent {x}")
    return int(x)


class Presentation:
    """A presentation bound to a datum: alphabet, toral commutation rules,
    defining relations, and lazily derived straightening tables."""

    def __init__(self, datum: CartanDatum, kind: str):
        if kind not in PRESENTATIONS:
            raise PresentationMismatch(f"unknown presentation {kind!r}")
        self.datum = datum
        self.kind = kind
        self.n = datum.n
        self.N = len(datum.root_data.positive_roots)
        self.has_e = kind != "borel_minus"
        self.has_f = kind != "borel_plus"
        self.has_kappa = kind == "double"
        n = self.n
        mu_cols = [tuple(datum.lattice_m[r][t] for r in range(n)) for t in range(n)]
        self.mu_cols = mu_cols
        self._comm_mu = tuple(
            tuple(_as_int(datum.bilinear(datum.simple_roots[i], mu_cols[t])) for t in range(n))
            for i in range(n)
        )
        self._comm_alpha = tuple(
            tuple(
                _as_int(datum.bilinear(datum.simple_roots[i], datum.simple_roots[t]))
                for t in range(n)
            )
            for i in range(n)
        )
        if kind == "dual_h":
            phi_mu = [datum.apply_phi(m) for m in mu_cols]
            self._comm_mu_e = tuple(
                tuple(
                    _as_int(
                        datum.bilinear(
                            datum.simple_roots[i], vec_add(mu_cols[t], vec_scale(phi_mu[t], -1))
                        )
                    )
                    for t in range(n)
                )
                for i in range(n)
            )
            self._comm_mu_f = tuple(
                tuple(
                    _as_int(datum.bilinear(datum.simple_roots[i], vec_add(mu_cols[t], phi_mu[t])))
                    for t in range(n)
                )
                for i in range(n)
            )
        roots = datum.root_data.roots_alpha
        self._root_mult = roots
        self.lam_len = 2 * n if self.has_kappa else n
        self._tables: dict = {}

    # -- toral bookkeeping --------------------------------------------------

    def zero_lam(self) -> tuple[int, ...]:
        return (0,) * self.lam_len

    def _comm_rows(self, positive: bool):
        if self.kind == "dual_h":
            return self._comm_mu_e if positive else self._comm_mu_f
        return self._comm_mu

    def comm_exponent_simple(self, letter: int, lam) -> int:
        """c with L_lam x = q^c x L_lam for a simple-generator letter."""
        i = abs(letter) - 1
        n = self.n
        rows = self._comm_rows(letter > 0)
        c = sum(rows[i][t] * lam[t] for t in range(n) if lam[t])
        if self.has_kappa:
            c += sum(self._comm_alpha[i][t] * lam[n + t] for t in range(n) if lam[n + t])
        if self.kind == "dual_h":
            return c
        return c if letter > 0 else -c

    def comm_exponent_root(self, letter: int, lam) -> int:
        """Same rule for a root-vector letter (its weight adds over letters)."""
        r = abs(letter) - 1
        mult = self._root_mult[r]
        return sum(
            mult[i] * self.comm_exponent_simple((i + 1) if letter > 0 else -(i + 1), lam)
            for i in range(self.n)
            if mult[i]
        )

    def mu_coords_in_lam(self, weight) -> tuple[int, ...]:
        mu = self.datum.mu_coords(weight)
        if self.has_kappa:
            return mu + (0,) * self.n
        return mu

    def q_i(self, i: int) -> int:
        return self.datum.d[i]

    # -- defining relations (letter level) -----------------------------------

    def serre_coefficients(self, side: int, i: int, j: int):
        """Coefficients c_k of E_i^(1-aij-k) E_j E_i^k in the Serre relation
        (side +1 for the E side, -1 for the F side)."""
        a = self.datum.A[i][j]
        out = []
        for k in range(0, 1 - a + 1):
            c = QScalar.from_laurent(q_binomial(1 - a, k, self.datum.d[i]))
            if k % 2 == 1:
                c = -c
            if self.kind == "dual_h":
                tau_i, tau_j = self.datum.tau[i], self.datum.tau[j]
                alpha_i, alpha_j = self.datum.simple_roots[i], self.datum.simple_roots[j]
                p = 1 - a - k
                cij = -(
                    k * self.datum.bilinear(alpha_i, vec_add(tau_j, vec_scale(tau_i, p)))
                ) - p * self.datum.bilinear(alpha_j, tau_i)
                c = c * QScalar.q_power(_as_int(cij) * side)
            out.append((k, c))
        return out

    def serre_relations(self, side: int):
        rels = []
        for i in range(self.n):
            for j in range(self.n):
                if i == j:
                    continue
                a = self.datum.A[i][j]
                rel: dict = {}
                for k, c in self.serre_coefficients(side, i, j):
                    word = (
                        (side * (i + 1),) * (1 - a - k)
                        + (side * (j + 1),)
                        + (side * (i + 1),) * k
                    )
                    _add_term(rel, word, c)
                rels.append(rel)
        return rels

    def cross_expansion(self, j: int, i: int):
        """Expansion of F_j E_i as (segment word, dlam, coeff) triples.

        In the double the toral terms carry the tau-split L_(a-tau) K_tau and
        K_(-a-tau) L_tau; this is what the abstract cross relation with the
        Borel coproducts reduces to, it equals (3.2)-style L_a - K_(-a) when
        phi = 0, and it projects onto the quotient relation for every phi.
        """
        out = [(((i + 1), -(j + 1)), self.zero_lam(), ONE)]
        if i == j and self.kind != "dual_h":
            datum = self.datum
            di = datum.d[i]
            denom = QScalar.q_power(di) - QScalar.q_power(-di)
            alpha = datum.simple_roots[i]
            if self.kind == "double":
                tau = datum.tau[i]
                if not datum.in_root_lattice(tau):
                    raise PresentationMismatch("tau outside Q: double not available")
                amt = datum.mu_coords(vec_sub(alpha, tau))
                tau_k = tuple(int(x) for x in datum.alpha_coords(tau))
                tau_m = datum.mu_coords(tau)
                mat_k = tuple(int(-x - y) for x, y in zip(datum.alpha_coords(alpha), datum.alpha_coords(tau)))
                plus = tuple(amt) + tau_k
                minus = tuple(tau_m) + mat_k
            else:
                alpha_mu = datum.mu_coords(alpha)
                plus = tuple(alpha_mu)
                minus = tuple(-x for x in alpha_mu)
            out.append(((), plus, -ONE / denom))
            out.append(((), minus, ONE / denom))
        return out


_PRES_CACHE: dict = {}


def presentation(datum: CartanDatum, kind: str) -> Presentation:
    key = (datum.key(), kind)
    if key not in _PRES_CACHE:
        _PRES_CACHE[key] = Presentation(datum, kind)
    return _PRES_CACHE[key]


# --- letter-level reduction (the independent path) --------------------------


def letter_reduce(pres: Presentation, elem: dict) -> dict:
    """Rewrite mixed words until every E-letter precedes every F-letter, using
    only the defining cross relations.  Input {(word, lam): coeff} with the
    toral part on the right; output {(eword, lam, fword): coeff} meaning
    eword * fword * L_lam."""
    out: dict = {}
    work = [(k, c) for k, c in elem.items()]
    while work:
        (word, lam), c = work.pop()
        pos = next((k for k in range(len(word) - 1) if word[k] < 0 and word[k + 1] > 0), None)
        if pos is None:
            ne = sum(1 for x in word if x > 0)
            _add_term(out, (word[:ne], lam, word[ne:]), c)
            continue
        j = -word[pos] - 1
        i = word[pos + 1] - 1
        tail = word[pos + 2 :]
        for seg, dlam, cc in pres.cross_expansion(j, i):
            shift = sum(pres.comm_exponent_simple(x, dlam) for x in tail)
            key = (word[:pos] + seg + tail, tuple(x + y for x, y in zip(lam, dlam)))
            work.append((key, c * cc * QScalar.q_power(shift)))
    return out


# --- root vectors ------------------------------------------------------------


def root_vector_decomposition(datum: CartanDatum, r: int):
    """The convex pair (a, b), a < r < b, defining root vector r (None if
    simple); the left factor is chosen as close to r as possible."""
    roots = datum.root_data.roots_alpha
    if sum(roots[r]) == 1:
        return None
    for a in range(r - 1, -1, -1):
        for b in range(r + 1, len(roots)):
            if tuple(x + y for x, y in zip(roots[a], roots[b])) == roots[r]:
                return (a, b)
    raise ConventionFailure(f"no convex decomposition found for root {roots[r]}")


def root_vector_word(datum: CartanDatum, side: int, r: int) -> dict:
    """Letter-level expansion of the root vector for positive root r:
    X_(a+b) := X_a X_b - q^((alpha^a|alpha^b)) X_b X_a on both sides."""
    cache = datum._cache.setdefault("root_words", {})
    key = (side, r)
    if key in cache:
        return cache[key]
    roots = datum.root_data.roots_alpha
    alpha = roots[r]
    if sum(alpha) == 1:
        i = alpha.index(1)
        out = {(side * (i + 1),): ONE}
    else:
        a, b = root_vector_decomposition(datum, r)
        left = root_vector_word(datum, side, a)
        right = root_vector_word(datum, side, b)
        excl = _as_int(
            datum.bilinear(
                datum.root_data.positive_roots[a], datum.root_data.positive_roots[b]
            )
        )
        out = {}
        for w1, c1 in left.items():
            for w2, c2 in right.items():
                _add_term(out, w1 + w2, c1 * c2)
                _add_term(out, w2 + w1, -QScalar.q_power(excl) * c1 * c2)
    cache[key] = out
    return out


# --- exact linear algebra over k(q) ------------------------------------------


def express_in_span(vectors, target):
    """Coefficients expressing target over the given vectors (dicts keyed by
    hashable labels), or None if target is outside the span."""
    rows = []  # (pivot, unit row, tracked combination of the input vectors)
    for idx, v in enumerate(vectors):
        row = dict(v)
        coeffs = {idx: ONE}
        for piv, prow, pcoef in rows:
            f = row.get(piv)
            if f is not None:
                for k, val in prow.items():
                    _add_term(row, k, -f * val)
                for k, val in pcoef.items():
                    _add_term(coeffs, k, -f * val)
        if not row:
            continue
        piv = next(iter(row))
        inv = row[piv].inv()
        row = {k: v2 * inv for k, v2 in row.items()}
        coeffs = {k: v2 * inv for k, v2 in coeffs.items()}
        rows.append((piv, row, coeffs))
    t = dict(target)
    sol: dict = {}
    for piv, prow, pcoef in rows:
        f = t.get(piv)
        if f is not None:
            for k, val in prow.items():
                _add_term(t, k, -f * val)
            for k, val in pcoef.items():
                _add_term(sol, k, f * val)
    if t:
        return None
    zero = QScalar.from_int(0)
    return [sol.get(i, zero) for i in range(len(vectors))]


# --- nilpotent Serre-quotient blocks ------------------------------------------


def _kostant_partitions(roots, content):
    out = []
    N = len(roots)

    def rec(r, remaining, acc):
        if r == N:
            if all(x == 0 for x in remaining):
                out.append(tuple(acc))
            return
        top = min(
            (remaining[i] // roots[r][i] for i in range(len(remaining)) if roots[r][i]),
            default=0,
        )
        for m in range(top, -1, -1):
            rest = tuple(remaining[i] - m * roots[r][i] for i in range(len(remaining)))
            if all(x >= 0 for x in rest):
                rec(r + 1, rest, acc + [m])

    rec(0, tuple(content), [])
    return out


def _content_words(content, side, n):
    letters = []
    for i in range(n):
        letters += [side * (i + 1)] * content[i]
    out = set()

    def rec(remaining, acc):
        if not remaining:
            out.add(tuple(acc))
            return
        seen = set()
        for k, x in enumerate(remaining):
            if x in seen:
                continue
            seen.add(x)
            rec(remaining[:k] + remaining[k + 1 :], acc + [x])

    rec(letters, [])
    return sorted(out)


def _split_contents(diff, n):
    out = []

    def rec(i, acc_u):
        if i == n:
            u = tuple(acc_u)
            out.append((u, tuple(diff[j] - u[j] for j in range(n))))
            return
        for k in range(diff[i] + 1):
            rec(i + 1, acc_u + [k])

    rec(0, [])
    return out


def root_vector_word_pres(pres: Presentation, side: int, r: int) -> dict:
    """Root-vector expansion in the presentation's own letters.  For dual_h
    the letters are the modified simple generators; the plain expansion is
    transferred with the exact tau q-powers."""
    w = root_vector_word(pres.datum, side, r)
    if pres.kind != "dual_h":
        return w
    cache = pres.datum._cache.setdefault("root_words_h", {})
    if (side, r) in cache:
        return cache[(side, r)]
    datum = pres.datum
    sign = -1 if side > 0 else 1
    out = {}
    for word, c in w.items():
        cw = 0
        for i in range(len(word)):
            for j in range(i + 1, len(word)):
                cw += sign * _as_int(
                    datum.bilinear(
                        datum.simple_roots[abs(word[i]) - 1], datum.tau[abs(word[j]) - 1]
                    )
                )
        out[word] = c * QScalar.q_power(-cw)
    cache[(side, r)] = out
    return out


def _expand_pbw_word(pres: Presentation, side: int, exps, order: str) -> dict:
    """Letter-level expansion of an ordered monomial in root vectors."""
    N = len(exps)
    seq = range(N - 1, -1, -1) if order == "desc" else range(N)
    vec = {(): ONE}
    for r in seq:
        for _ in range(exps[r]):
            w = root_vector_word_pres(pres, side, r)
            new: dict = {}
            for w1, c1 in vec.items():
                for w2, c2 in w.items():
                    _add_term(new, w1 + w2, c1 * c2)
            vec = new
    return vec


def _nilpotent_block(pres: Presentation, side: int, content, order: str):
    """Stacked [pbw expansions | Serre ideal rows] for one weight component."""
    key = ("nilblock", pres.kind, side, tuple(content), order)
    cache = pres.datum._cache
    if key in cache:
        return cache[key]
    datum = pres.datum
    n = pres.n
    roots = datum.root_data.roots_alpha
    monos = _kostant_partitions(roots, content)
    columns = [_expand_pbw_word(pres, side, m, order) for m in monos]
    labels = [("pbw", m) for m in monos]
    for ridx, rel in enumerate(pres.serre_relations(side)):
        w0 = next(iter(rel))
        rc = [0] * n
        for x in w0:
            rc[abs(x) - 1] += 1
        diff = [content[i] - rc[i] for i in range(n)]
        if any(x < 0 for x in diff):
            continue
        for ucont, vcont in _split_contents(diff, n):
            for u in _content_words(ucont, side, n):
                for v in _content_words(vcont, side, n):
                    row: dict = {}
                    for w, c in rel.items():
                        _add_term(row, u + w + v, c)
                    columns.append(row)
                    labels.append(("ideal", (ridx, u, v)))
    block = {"columns": columns, "labels": labels}
    cache[key] = block
    return block


def nilpotent_expand(pres: Presentation, side: int, word_elem: dict, order: str):
    """Express a pure nilpotent letter-level element over ordered PBW
    root-vector monomials by exact linear algebra in the Serre quotient."""
    n = pres.n
    out: dict = {}
    by_content: dict = {}
    for word, c in word_elem.items():
        content = [0] * n
        for x in word:
            if x * side <= 0:
                raise PresentationMismatch("mixed letters in nilpotent expansion")
            content[abs(x) - 1] += 1
        by_content.setdefault(tuple(content), {})[word] = c
    for content, vec in by_content.items():
        block = _nilpotent_block(pres, side, content, order)
        coeffs = express_in_span(block["columns"], vec)
        if coeffs is None:
            raise ConventionFailure(f"word not expressible over PBW basis at content {content}")
        for (kind, label), c in zip(block["labels"], coeffs):
            if kind == "pbw" and not c.is_zero():
                _add_term(out, label, c)
    return out


# --- PBW monomials and elements -----------------------------------------------


class PBWMonomial(NamedTuple):
    """Exponents of E^e * L_mu (* K_kappa) * F^f; e stored in convex order and
    applied descending, f applied ascending."""

    e: tuple
    mu: tuple
    kappa: tuple
    f: tuple

    def degree(self) -> int:
        return sum(self.e) + sum(self.f)


def monomial_one(pres: Presentation) -> PBWMonomial:
    return PBWMonomial((0,) * pres.N, (0,) * pres.n, (0,) * pres.n, (0,) * pres.N)


class AlgebraElement:
    """Finite k(q)-combination of PBW monomials in normal form."""

    __slots__ = ("pres", "terms")

    def __init__(self, pres: Presentation, terms=None):
        self.pres = pres
        self.terms = {}
        if terms:
            for m, c in terms.items():
                if not c.is_zero():
                    self.terms[m] = c

    @classmethod
    def zero(cls, pres) -> AlgebraElement:
        return cls(pres)

    @classmethod
    def one(cls, pres) -> AlgebraElement:
        return cls(pres, {monomial_one(pres): ONE})

    @classmethod
    def scalar(cls, pres, c) -> AlgebraElement:
        c = c if isinstance(c, QScalar) else QScalar.from_int(c)
        return cls(pres, {monomial_one(pres): c})

    @classmethod
    def generator_e(cls, pres, i: int) -> AlgebraElement:
        if not pres.has_e:
            raise PresentationMismatch(f"no E generators in {pres.kind}")
        return cls.root_vector(pres, +1, simple_root_index(pres.datum, i))

    @classmethod
    def generator_f(cls, pres, i: int) -> AlgebraElement:
        if not pres.has_f:
            raise PresentationMismatch(f"no F generators in {pres.kind}")
        return cls.root_vector(pres, -1, simple_root_index(pres.datum, i))

    @classmethod
    def root_vector(cls, pres, side: int, r: int) -> AlgebraElement:
        exps = [0] * pres.N
        exps[r] = 1
        zero_e = (0,) * pres.N
        zeros = (0,) * pres.n
        if side > 0:
            m = PBWMonomial(tuple(exps), zeros, zeros, zero_e)
        else:
            m = PBWMonomial(zero_e, zeros, zeros, tuple(exps))
        return cls(pres, {m: ONE})

    @classmethod
    def toral(cls, pres, mu_coords, kappa_coords=None) -> AlgebraElement:
        mu = tuple(int(x) for x in mu_coords)
        kappa = tuple(int(x) for x in kappa_coords) if kappa_coords else (0,) * pres.n
        if any(kappa) and not pres.has_kappa:
            raise PresentationMismatch("kappa exponents exist only in the double")
        return cls(pres, {PBWMonomial((0,) * pres.N, mu, kappa, (0,) * pres.N): ONE})

    @classmethod
    def toral_weight(cls, pres, weight) -> AlgebraElement:
        return cls.toral(pres, pres.datum.mu_coords(weight))

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = AlgebraElement.scalar(self.pres, other)
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.pres is other.pres and self.terms == other.terms

    def __hash__(self):
        return hash((self.pres.kind, tuple(sorted(self.terms.items()))))

    def __add__(self, other) -> AlgebraElement:
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            _add_term(out, m, c)
        return AlgebraElement(self.pres, out)

    __radd__ = __add__

    def __neg__(self) -> AlgebraElement:
        return AlgebraElement(self.pres, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> AlgebraElement:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> AlgebraElement:
        return (-self) + self._coerce(other)

    def __mul__(self, other) -> AlgebraElement:
        if isinstance(other, (int, QScalar)):
            c = other if isinstance(other, QScalar) else QScalar.from_int(other)
            return AlgebraElement(self.pres, {m: v * c for m, v in self.terms.items()})
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        if other.pres is not self.pres:
            raise PresentationMismatch("operands from different presentations")
        return multiply(self, other)

    def __rmul__(self, other) -> AlgebraElement:
        if isinstance(other, (int, QScalar)):
            return self * other
        return NotImplemented

    def __pow__(self, k: int) -> AlgebraElement:
        if k < 0:
            raise ValueError("negative powers are not defined")
        out = AlgebraElement.one(self.pres)
        for _ in range(k):
            out = out * self
        return out

    def _coerce(self, other) -> AlgebraElement:
        if isinstance(other, AlgebraElement):
            if other.pres is not self.pres:
                raise PresentationMismatch("operands from different presentations")
            return other
        if isinstance(other, (int, QScalar)):
            return AlgebraElement.scalar(self.pres, other)
        raise TypeError(f"cannot coerce {other!r}")

    def scalar_part(self) -> QScalar:
        return self.terms.get(monomial_one(self.pres), QScalar.from_int(0))

    def max_degree(self) -> int:
        return max((m.degree() for m in self.terms), default=0)

    def to_json(self):
        items = []
        for m, c in sorted(self.terms.items()):
            items.append(
                {
                    "e": list(m.e),
                    "mu": list(m.mu),
                    "kappa": list(m.kappa),
                    "f": list(m.f),
                    "coeff": c.to_json(),
                }
            )
        return {"presentation": self.pres.kind, "terms": items}

    @classmethod
    def from_json(cls, pres: Presentation, data) -> AlgebraElement:
        if data["presentation"] != pres.kind:
            raise PresentationMismatch(
                f"element is {data['presentation']}, expected {pres.kind}"
            )
        terms = {}
        for t in data["terms"]:
            m = PBWMonomial(tuple(t["e"]), tuple(t["mu"]), tuple(t["kappa"]), tuple(t["f"]))
            terms[m] = QScalar.from_json(t["coeff"])
        return cls(pres, terms)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(
            f"({c})*{_monomial_str(self.pres, m)}" for m, c in sorted(self.terms.items())
        )


def _monomial_str(pres, m: PBWMonomial) -> str:
    bits = []
    for r in range(pres.N - 1, -1, -1):
        if m.e[r]:
            bits.append(f"E{r + 1}" + (f"^{m.e[r]}" if m.e[r] > 1 else ""))
    if any(m.mu):
        bits.append(f"L{list(m.mu)}")
    if any(m.kappa):
        bits.append(f"K{list(m.kappa)}")
    for r in range(pres.N):
        if m.f[r]:
            bits.append(f"F{r + 1}" + (f"^{m.f[r]}" if m.f[r] > 1 else ""))
    return "*".join(bits) if bits else "1"


def simple_root_index(datum: CartanDatum, i: int) -> int:
    roots = datum.root_data.roots_alpha
    target = tuple(1 if k == i else 0 for k in range(datum.n))
    return roots.index(target)


def weight_of(pres: Presentation, m: PBWMonomial):
    """Q-grading degree in alpha coordinates: sum e_r alpha^r - sum f_r alpha^r."""
    roots = pres.datum.root_data.roots_alpha
    n = pres.n
    out = [0] * n
    for r in range(pres.N):
        d = m.e[r] - m.f[r]
        if d:
            for i in range(n):
                out[i] += d * roots[r][i]
    return tuple(out)


def weight_of_element(x: AlgebraElement):
    ws = {weight_of(x.pres, m) for m in x.terms}
    if len(ws) > 1:
        raise ValueError("element is not weight homogeneous")
    return ws.pop() if ws else (0,) * x.pres.n


# --- monomial <-> engine word conversions --------------------------------------
#
# The engine tracks torals on the right of a word; a stored monomial has its
# toral part in the middle.  Moving L_lam from the middle to the right across
# the F-part produces an explicit q-power.


def _fpart_comm(pres: Presentation, m: PBWMonomial, lam) -> int:
    c = 0
    for r in range(pres.N):
        if m.f[r]:
            c += m.f[r] * pres.comm_exponent_root(-(r + 1), lam)
    return c


def _monomial_word(pres: Presentation, m: PBWMonomial):
    """(word, lam, exponent c): the monomial equals q^c * word * L_lam."""
    word = []
    for r in range(pres.N - 1, -1, -1):
        word += [r + 1] * m.e[r]
    for r in range(pres.N):
        word += [-(r + 1)] * m.f[r]
    lam = m.mu + (m.kappa if pres.has_kappa else ())
    return tuple(word), lam, _fpart_comm(pres, m, lam)


def _word_to_monomial(pres: Presentation, word, lam):
    """(monomial, exponent c): word * L_lam equals q^c * monomial."""
    e = [0] * pres.N
    f = [0] * pres.N
    for x in word:
        if x > 0:
            e[x - 1] += 1
        else:
            f[-x - 1] += 1
    n = pres.n
    mu = tuple(lam[:n])
    kappa = tuple(lam[n:]) if pres.has_kappa else (0,) * n
    m = PBWMonomial(tuple(e), mu, kappa, tuple(f))
    return m, -_fpart_comm(pres, m, lam)


# --- straightening tables -------------------------------------------------------


def _table(pres: Presentation, name: str):
    if name not in pres._tables:
        if name in ("EE_desc", "EE_asc"):
            t = _derive_nilpotent_table(pres, +1, name[3:])
        elif name in ("FF_asc", "FF_desc"):
            t = _derive_nilpotent_table(pres, -1, name[3:])
        elif name == "FE":
            t = _derive_cross_table(pres)
        else:
            raise KeyError(name)
        pres._tables[name] = t
    return pres._tables[name]


def _derive_nilpotent_table(pres: Presentation, side: int, order: str):
    """Expansions of wrong-order root-vector pairs over ordered monomials."""
    N = pres.N
    out = {}
    for a in range(N):
        for b in range(N):
            wrong = (a < b) if order == "desc" else (a > b)
            if not wrong:
                continue
            wa = root_vector_word_pres(pres, side, a)
            wb = root_vector_word_pres(pres, side, b)
            prod: dict = {}
            for w1, c1 in wa.items():
                for w2, c2 in wb.items():
                    _add_term(prod, w1 + w2, c1 * c2)
            exp = nilpotent_expand(pres, side, prod, order)
            for c in exp.values():
                if not c.is_laurent():
                    raise ConventionFailure(
                        f"straightening of roots ({a},{b}) has non-Laurent coefficient {c}"
                    )
            out[(a, b)] = exp
    return out


def _derive_cross_table(pres: Presentation):
    """Normal form of F_s E_r for every pair of positive roots."""
    out = {}
    datum = pres.datum
    N = pres.N
    zeros = (0,) * pres.n
    if pres.kind == "dual_h":
        for s in range(N):
            for r in range(N):
                e = [0] * N
                e[r] = 1
                f = [0] * N
                f[s] = 1
                out[(s, r)] = {PBWMonomial(tuple(e), zeros, zeros, tuple(f)): ONE}
        return out
    for s in range(N):
        wf = root_vector_word(datum, -1, s)
        for r in range(N):
            we = root_vector_word(datum, +1, r)
            prod: dict = {}
            for w1, c1 in wf.items():
                for w2, c2 in we.items():
                    _add_term(prod, (w1 + w2, pres.zero_lam()), c1 * c2)
            out[(s, r)] = _assemble_from_letters(pres, letter_reduce(pres, prod))
    return out


def _assemble_from_letters(pres: Presentation, reduced: dict) -> dict:
    """{(eword, lam, fword): coeff} with torals on the right -> normal form."""
    out: dict = {}
    n = pres.n
    none_e = {(0,) * pres.N: ONE}
    for (eword, lam, fword), c in reduced.items():
        # eword * fword * L_lam = q^(-cf) * eword * L_lam * fword
        cf = sum(pres.comm_exponent_simple(x, lam) for x in fword)
        c = c * QScalar.q_power(-cf)
        e_exp = nilpotent_expand(pres, +1, {eword: ONE}, "desc") if eword else none_e
        f_exp = nilpotent_expand(pres, -1, {fword: ONE}, "asc") if fword else none_e
        mu = lam[:n]
        kappa = lam[n:] if pres.has_kappa else (0,) * n
        for ee, ce in e_exp.items():
            for ff, cf2 in f_exp.items():
                _add_term(out, PBWMonomial(tuple(ee), tuple(mu), tuple(kappa), tuple(ff)), c * ce * cf2)
    return out


# --- the monomial rewriting engine ------------------------------------------------


def multiply(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    pres = x.pres
    out: dict = {}
    for m1, c1 in x.terms.items():
        w1, l1, a1 = _monomial_word(pres, m1)
        for m2, c2 in y.terms.items():
            w2, l2, a2 = _monomial_word(pres, m2)
            shift = sum(pres.comm_exponent_root(t, l1) for t in w2)
            lam = tuple(a + b for a, b in zip(l1, l2))
            coeff = c1 * c2 * QScalar.q_power(a1 + a2 + shift)
            for mono, c in _normalize_root_word(pres, w1 + w2, lam).items():
                _add_term(out, mono, coeff * c)
    return AlgebraElement(pres, out)


def _normalize_root_word(pres: Presentation, word, lam) -> dict:
    """Normal form of a word in root-vector letters times L_lam (on the right)."""
    out: dict = {}
    work = [((tuple(word), tuple(lam)), ONE)]
    while work:
        (w, l), c = work.pop()
        viol = _first_violation(w)
        if viol is None:
            mono, a = _word_to_monomial(pres, w, l)
            _add_term(out, mono, c * QScalar.q_power(a))
            continue
        pos, key = viol
        a, b = w[pos], w[pos + 1]
        tail = w[pos + 2 :]
        if a * b > 0:
            # one-sided reorder: entries are exponent tuples, no toral part
            side = 1 if a > 0 else -1
            order_desc = a > 0
            for exps, cc in _table(pres, "EE_desc" if a > 0 else "FF_asc")[key].items():
                seg = _exps_to_word(pres, side, exps, "desc" if order_desc else "asc")
                work.append(((w[:pos] + seg + tail, l), c * cc))
            continue
        for mono, cc in _table(pres, "FE")[key].items():
            seg_word, seg_lam, seg_a = _monomial_word(pres, mono)
            shift = sum(pres.comm_exponent_root(t, seg_lam) for t in tail)
            new_word = w[:pos] + seg_word + tail
            new_lam = tuple(p + s for p, s in zip(l, seg_lam))
            work.append(((new_word, new_lam), c * cc * QScalar.q_power(seg_a + shift)))
    return out


def _exps_to_word(pres: Presentation, side: int, exps, order: str):
    seq = range(pres.N - 1, -1, -1) if order == "desc" else range(pres.N)
    seg = []
    for r in seq:
        seg += [side * (r + 1)] * exps[r]
    return tuple(seg)


def _first_violation(word):
    for k in range(len(word) - 1):
        a, b = word[k], word[k + 1]
        if a > 0 and b > 0 and a < b:
            return (k, (a - 1, b - 1))
        if a < 0 and b < 0 and -a > -b:
            return (k, (-a - 1, -b - 1))
        if a < 0 and b > 0:
            return (k, (-a - 1, b - 1))
    return None


# --- order conversion for pairing evaluation ---------------------------------------


def to_fdesc_llast(x: AlgebraElement) -> dict:
    """Coordinates over the basis F_(alpha^N)^.. ... F_(alpha^1)^.. * L_mu
    (decreasing F, toral last), for elements of the negative Borel."""
    pres = x.pres
    out: dict = {}
    for m, c in x.terms.items():
        if any(m.e) or any(m.kappa):
            raise PresentationMismatch("expected an element of the negative Borel")
        # stored monomial is L_mu * F_asc; move L to the right
        shift = _fpart_comm(pres, m, m.mu + ((0,) * pres.n if pres.has_kappa else ()))
        word = []
        for r in range(pres.N):
            word += [-(r + 1)] * m.f[r]
        for exps, cc in _reorder_pure(pres, tuple(word), -1, "desc").items():
            _add_term(out, (exps, m.mu), c * cc * QScalar.q_power(shift))
    return out


def to_edesc_llast(x: AlgebraElement) -> dict:
    """Coordinates over E_(alpha^N)^.. ... E_(alpha^1)^.. * L_mu for elements
    of the positive Borel (already the stored order)."""
    out: dict = {}
    for m, c in x.terms.items():
        if any(m.f) or any(m.kappa):
            raise PresentationMismatch("expected an element of the positive Borel")
        _add_term(out, (tuple(m.e), m.mu), c)
    return out


def _reorder_pure(pres: Presentation, word, side: int, order: str) -> dict:
    """Rewrite a pure one-sided word of root letters over the asked order."""
    table_name = ("EE_" if side > 0 else "FF_") + order
    out: dict = {}
    work = [(word, ONE)]
    while work:
        w, c = work.pop()
        pos = None
        for k in range(len(w) - 1):
            a, b = abs(w[k]) - 1, abs(w[k + 1]) - 1
            if (a < b) if order == "desc" else (a > b):
                pos = (k, (a, b))
                break
        if pos is None:
            exps = [0] * pres.N
            for t in w:
                exps[abs(t) - 1] += 1
            _add_term(out, tuple(exps), c)
            continue
        k, key = pos
        tail = w[k + 2 :]
        for exps, cc in _table(pres, table_name)[key].items():
            seq = range(pres.N - 1, -1, -1) if order == "desc" else range(pres.N)
            seg = []
            for r in seq:
                seg += [side * (r + 1)] * exps[r]
            work.append((w[:k] + tuple(seg) + tail, c * cc))
    return out


# --- the public oracle ----------------------------------------------------------


def serre_oracle_normal_form(word, maxdeg: int, datum: CartanDatum, kind: str = "full") -> AlgebraElement:
    """Independent normal form computed from the defining relations only.

    word: sequence of tokens ('E', i) / ('F', i) with 0-based generator index,
    ('L', mu-coords), or ('K', alpha-coords).  The reduction works letter by
    letter and never touches the engine's cross straightening tables.
    """
    if maxdeg > 6:
        raise DegreeTooLarge("oracle degree bound is 6")
    pres = presentation(datum, kind)
    letters: list[int] = []
    lam = [0] * pres.lam_len
    coeff = ONE
    deg = 0
    for tok in word:
        tag = tok[0]
        if tag in ("E", "F"):
            letter = (tok[1] + 1) if tag == "E" else -(tok[1] + 1)
            coeff = coeff * QScalar.q_power(pres.comm_exponent_simple(letter, tuple(lam)))
            letters.append(letter)
            deg += 1
        elif tag == "L":
            for t in range(pres.n):
                lam[t] += int(tok[1][t])
        elif tag == "K":
            if pres.has_kappa:
                for t in range(pres.n):
                    lam[pres.n + t] += int(tok[1][t])
            else:
                mu = datum.mu_coords(datum.from_alpha_coords(tok[1]))
                for t in range(pres.n):
                    lam[t] += int(mu[t])
        else:
            raise ValueError(f"unknown token {tok!r}")
    if deg > maxdeg:
        raise DegreeTooLarge(f"word degree {deg} exceeds bound {maxdeg}")
    reduced = letter_reduce(pres, {(tuple(letters), tuple(lam)): coeff})
    return AlgebraElement(pres, _assemble_from_letters(pres, reduced))


def root_vectors(datum: CartanDatum):
    """Definitions of the root vectors as words in simple generators, with the
    straightening-closure validation forced (ConventionFailure on failure)."""
    pres = presentation(datum, "borel_plus")
    _table(pres, "EE_desc")
    return {
        r: {
            "root": datum.root_data.roots_alpha[r],
            "decomposition": root_vector_decomposition(datum, r),
            "word": dict(root_vector_word(datum, +1, r)),
        }
        for r in range(pres.N)
    }


def filtration_degree(x, form: str = "restricted") -> int:
    """Filtration degree used by the scaled Poisson pairings (see forms)."""
    from .forms import filtration_degree as _fd

    return _fd(x, form)
