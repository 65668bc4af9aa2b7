"""The quantum formal group side: functionals on the quotient algebra over M'
realized through the dual-side algebra, extensional dual coproduct and
antipode, truncated series reconstruction by exact character solves, the
triangular dual pseudobasis, the umbral congruences, and the structure
constants entering them."""

from __future__ import annotations

from fractions import Fraction

from .cartan import CartanDatum
from .errors import (
    AmbiguousCharacters,
    CongruenceFailure,
    PresentationMismatch,
    WindowTooSmall,
)
from .forms import FormBasisMonomial, materialize
from .hopf import antipode as u_antipode
from .pbw import (
    ONE,
    AlgebraElement,
    PBWMonomial,
    _add_term,
    presentation,
    simple_root_index,
)
from .pair import eval_h_monomial, h_eval_coords, quantum_poisson_pair
from .qcoeff import LaurentPoly, QScalar


class DualFunctional:
    """Functional on the quotient algebra over M', primarily extensional.

    Sources: a finite dual_h element (evaluation via the quantum Poisson
    pairing) or an arbitrary evaluation callable."""

    def __init__(self, datum: CartanDatum, evaluate, source=None):
        self.datum = datum  # the dual-side datum (lattice M)
        self._evaluate = evaluate
        self.source = source

    @classmethod
    def from_h_element(cls, h: AlgebraElement) -> DualFunctional:
        if h.pres.kind != "dual_h":
            raise PresentationMismatch("expected a dual_h element")
        return cls(h.pres.datum, lambda g: quantum_poisson_pair(h, g), source=h)

    def __call__(self, g: AlgebraElement) -> QScalar:
        return self._evaluate(g)


def nu_embed(h: AlgebraElement) -> DualFunctional:
    """The isomorphism onto functionals: evaluation through the split
    pi tensor pibar rule of the double's dual."""
    return DualFunctional.from_h_element(h)


class PairFunctional:
    """Functional on pairs of quotient elements (extensional tensor square)."""

    def __init__(self, datum: CartanDatum, evaluate):
        self.datum = datum
        self._evaluate = evaluate

    def __call__(self, u: AlgebraElement, v: AlgebraElement) -> QScalar:
        return self._evaluate(u, v)


def dual_coproduct(f: DualFunctional) -> PairFunctional:
    """Delta(f) characterized by <Delta(f), u (x) v> = <f, u v>."""
    return PairFunctional(f.datum, lambda u, v: f(u * v))


def dual_antipode(f: DualFunctional) -> DualFunctional:
    """S(f) characterized by <S(f), u> = <f, S(u)>."""
    return DualFunctional(f.datum, lambda g: f(u_antipode(g)))


def functional_product(f: DualFunctional, g: DualFunctional) -> DualFunctional:
    """(f*g)(u) = sum f(u(1)) g(u(2)): the dual-algebra multiplication."""
    from .hopf import coproduct

    def ev(u):
        total = QScalar.from_int(0)
        for (m1, m2), c in coproduct(u).terms.items():
            a = AlgebraElement(u.pres, {m1: ONE})
            b = AlgebraElement(u.pres, {m2: ONE})
            v1 = f(a)
            if not v1.is_zero():
                total = total + c * v1 * g(b)
        return total

    return DualFunctional(f.datum, ev, source=None)


# --- series reconstruction -----------------------------------------------------


def _u_monomial(pres_u, e_exps, lam_mu, f_exps) -> AlgebraElement:
    m = PBWMonomial(tuple(e_exps), tuple(lam_mu), (0,) * pres_u.n, tuple(f_exps))
    return AlgebraElement(pres_u, {m: ONE})


def _h_eval_basis_element(pres_h, fdesc, mu, easc) -> AlgebraElement:
    """F^phi-desc * L^phi_mu * E^phi-asc as a stored dual_h element."""
    acc = AlgebraElement.one(pres_h)
    for r in range(pres_h.N - 1, -1, -1):
        if fdesc[r]:
            acc = acc * AlgebraElement.root_vector(pres_h, -1, r) ** fdesc[r]
    acc = acc * AlgebraElement.toral(pres_h, mu)
    for r in range(pres_h.N):
        if easc[r]:
            acc = acc * AlgebraElement.root_vector(pres_h, +1, r) ** easc[r]
    return acc


def _exps_by_height(datum: CartanDatum, bound: int):
    roots = datum.root_data.roots_alpha
    out = []

    def rec(r, acc, ht):
        if r == len(roots):
            out.append(tuple(acc))
            return
        step = sum(roots[r])
        m = 0
        while ht + m * step <= bound:
            rec(r + 1, acc + [m], ht + m * step)
            m += 1

    rec(0, [], 0)
    return out


def _window_box(n: int, w: int):
    out = []

    def rec(i, acc):
        if i == n:
            out.append(tuple(acc))
            return
        for t in range(-w, w + 1):
            rec(i + 1, acc + [t])

    rec(0, [])
    return sorted(out, key=lambda t: (sum(abs(x) for x in t), t))


def reconstruct_series(f: DualFunctional, degree: int, window: int) -> AlgebraElement:
    """Truncated expansion of a functional over the dual-side PBW basis.

    For each bidegree sector (F-exponents a, E-exponents b) with heights <=
    degree, the toral coefficients are recovered by solving the character
    linear system on toral sample points of the window; a verification pass
    re-evaluates the reconstruction on the whole window and raises
    AmbiguousCharacters on mismatch or a singular solve."""
    datum = f.datum
    pres_h = presentation(datum, "dual_h")
    pres_u = presentation(datum.dual(), "full")
    mus = _window_box(datum.n, window)
    # sample beyond the candidate set so the verification pass has teeth
    lams = _window_box(datum.n, window + 1)
    out = AlgebraElement.zero(pres_h)
    sectors = _exps_by_height(datum, degree)
    for a in sectors:
        for b in sectors:
            values = {lam: f(_u_monomial(pres_u, a, lam, b)) for lam in lams}
            if all(v.is_zero() for v in values.values()):
                continue
            # design matrix: candidate basis element (a, mu, b) evaluated on
            # the sample monomials
            columns = []
            for mu in mus:
                mu_w = datum.weight_of_mu(mu)
                col = {
                    lam: eval_h_monomial(datum, a, mu_w, b, _u_monomial(pres_u, a, lam, b))
                    for lam in lams
                }
                columns.append((mu, col))
            coeffs = _solve_characters(columns, values, lams)
            if coeffs is None:
                raise AmbiguousCharacters(
                    f"window {window} cannot separate the characters in sector {a},{b}"
                )
            for mu, c in coeffs:
                if not c.is_zero():
                    out = out + c * _h_eval_basis_element(pres_h, a, mu, b)
    # verification pass over the full window
    for a in sectors:
        for b in sectors:
            for lam in lams:
                g = _u_monomial(pres_u, a, lam, b)
                if quantum_poisson_pair(out, g) != f(g):
                    raise AmbiguousCharacters(
                        f"reconstruction mismatch at sector {a},{b}, toral {lam}"
                    )
    return out


def _solve_characters(columns, values, lams):
    """Solve sum_mu c_mu col_mu = values as an exact linear system."""
    from .pbw import express_in_span

    vecs = [{lam: col[lam] for lam in lams if not col[lam].is_zero()} for _, col in columns]
    target = {lam: v for lam, v in values.items() if not v.is_zero()}
    sol = express_in_span(vecs, target)
    if sol is None:
        return None
    return [(columns[k][0], c) for k, c in enumerate(sol)]


# --- dual pseudobasis ------------------------------------------------------------


def dual_pseudobasis(datum: CartanDatum, eta, phi_exps, window: int) -> dict:
    """Triangular inversion for the dual of the restricted PBW basis: returns
    {tau: {tau_prime: c}} over the window so that the functional dual to
    E^(eta) u_tau F^(phi) is (DKP-rescaled F-monomial) * sum c L^phi_(tau')
    * (DKP-rescaled E-monomial)."""
    pres_u = presentation(datum.dual(), "full")
    pres_h = presentation(datum, "dual_h")
    n = datum.n
    taus = []

    def rec(i, acc):
        if i == n:
            taus.append(tuple(acc))
            return
        for t in range(window + 1):
            rec(i + 1, acc + [t])

    rec(0, [])
    taus.sort(key=lambda t: (sum(t), t))

    def dominated(tp, t):
        return all(a <= b for a, b in zip(tp, t))

    def h_elem(sigma):
        base = _h_eval_basis_element(pres_h, tuple(eta), sigma, tuple(phi_exps))
        scale = ONE
        for r in range(pres_h.N):
            d = datum.root_data.d_alpha[r]
            gen = QScalar.q_power(d) - QScalar.q_power(-d)
            scale = scale * gen ** (eta[r] + phi_exps[r])
        return scale * base

    def x_elem(tau):
        return materialize(
            FormBasisMonomial("restricted", tuple(eta), tau, tuple(phi_exps)), pres_u
        )

    pair_cache = {}

    def pairing(sigma, tau):
        if (sigma, tau) not in pair_cache:
            pair_cache[(sigma, tau)] = quantum_poisson_pair(h_elem(sigma), x_elem(tau))
        return pair_cache[(sigma, tau)]

    out = {}
    inv_cache = {}
    for tau in taus:
        if pairing(tau, tau).is_zero():
            raise WindowTooSmall(f"diagonal pairing vanishes at tau={tau}")
        inv_cache[tau] = _invert_row(tau, taus, pairing, inv_cache, dominated)
        out[tau] = inv_cache[tau]
    return out


def _invert_row(tau, taus, pairing, inv_cache, dominated):
    """Coefficients c' with X*_tau = sum c'_(tau,tp) L-basis element tp."""
    diag = pairing(tau, tau)
    row = {tau: diag.inv()}
    for tp in taus:
        if tp == tau or not dominated(tp, tau):
            continue
        # subtract the contribution of the smaller dual elements
        val = pairing(tau, tp)
        if val.is_zero():
            continue
        inner = inv_cache.get(tp)
        if inner is None:
            raise WindowTooSmall(f"window misses dominated point {tp}")
        for sp, c in inner.items():
            _add_term(row, sp, -diag.inv() * val * c)
    return row


# --- structure constants ----------------------------------------------------------


def compute_structure_constants(datum: CartanDatum) -> dict:
    """C^(i,+-)_(alpha,beta) from straightening [F_alpha, E_beta] in the
    quotient algebra and projecting onto the bare E_i resp. F_i coordinate,
    plus their classical limits."""
    pres = presentation(datum, "full")
    N = pres.N
    n = pres.n
    out = {"C+": {}, "C-": {}, "c+": {}, "c-": {}}
    for a in range(N):
        Fa = AlgebraElement.root_vector(pres, -1, a)
        for b in range(N):
            Eb = AlgebraElement.root_vector(pres, +1, b)
            br = Fa * Eb - Eb * Fa
            for i in range(n):
                r = simple_root_index(datum, i)
                e1 = tuple(1 if k == r else 0 for k in range(N))
                zero_e = (0,) * N
                # projection onto k(q) F_i resp. k(q) E_i: the matching
                # F/E-component with the toral part evaluated by the counit
                cm = QScalar.from_int(0)
                cp = QScalar.from_int(0)
                for m, c in br.terms.items():
                    if m.e == zero_e and m.f == e1:
                        cm = cm + c
                    if m.e == e1 and m.f == zero_e:
                        cp = cp + c
                if not cm.is_zero():
                    out["C-"][(i, a, b)] = cm
                if not cp.is_zero():
                    out["C+"][(i, a, b)] = cp
    from .qcoeff import specialize_at_one

    for sign in ("+", "-"):
        for key, val in out[f"C{sign}"].items():
            try:
                out[f"c{sign}"][key] = specialize_at_one(val)
            except Exception:
                pass
    return out


def structure_constant_weight_filter(datum: CartanDatum) -> bool:
    """C^(i,-)_(alpha,beta) = 0 unless beta - alpha = -alpha_i (grading)."""
    consts = compute_structure_constants(datum)
    roots = datum.root_data.roots_alpha
    ok = True
    for (i, a, b), _ in consts["C-"].items():
        diff = tuple(x - y for x, y in zip(roots[b], roots[a]))
        target = tuple(-1 if k == i else 0 for k in range(datum.n))
        ok = ok and diff == target
    for (i, a, b), _ in consts["C+"].items():
        diff = tuple(x - y for x, y in zip(roots[a], roots[b]))
        target = tuple(-1 if k == i else 0 for k in range(datum.n))
        ok = ok and diff == target
    return ok


# --- umbral congruences ------------------------------------------------------------


def _qqm_poly() -> LaurentPoly:
    return LaurentPoly({1: Fraction(1), -1: Fraction(-1)})


def _h_generator(pres_h, tag: str, i: int) -> AlgebraElement:
    if tag == "F":
        return AlgebraElement.generator_f(pres_h, i)
    if tag == "E":
        return AlgebraElement.generator_e(pres_h, i)
    if tag == "L":
        # the toral binomial (M^phi_i; 0, 1)
        t = tuple(1 if k == i else 0 for k in range(pres_h.n))
        return materialize(FormBasisMonomial("restricted", (0,) * pres_h.N, t, (0,) * pres_h.N), pres_h)
    raise ValueError(f"unknown generator tag {tag!r}")


def _k_phi(pres_h, i: int) -> AlgebraElement:
    datum = pres_h.datum
    return AlgebraElement.toral(pres_h, datum.mu_coords(datum.simple_roots[i]))


def umbral_congruence_display(datum: CartanDatum, tag: str, i: int):
    """The displayed coproduct congruence right-hand side as a finite
    dual_h (x) dual_h combination: list of (left, right, coeff).

    The cross terms are stated by the paper for its own braid-normalized
    root vectors; the recorded per-root diagonal factors translate them to
    the kernel's bracket normalization (1/(rho_alpha rho_beta) per term)."""
    from .pair import resolve_pairing_convention

    pres_h = presentation(datum, "dual_h")
    one = AlgebraElement.one(pres_h)
    F = _h_generator(pres_h, "F", i)
    E = _h_generator(pres_h, "E", i)
    norms = resolve_pairing_convention(datum).root_norms
    consts = compute_structure_constants(datum)
    qi = datum.d[i]
    q_i_m1 = QScalar.from_laurent(LaurentPoly({qi: Fraction(1), 0: Fraction(-1)}))
    qqm_i = QScalar.q_power(qi) - QScalar.q_power(-qi)
    terms = []
    if tag == "F":
        kb = _toral_binom_one(pres_h, datum.simple_roots[i])
        terms = [
            (F, one, ONE),
            (one, F, ONE),
            (kb, F, q_i_m1),
        ]
        K = _k_phi(pres_h, i)
        for (j, a, b), c in consts["C+"].items():
            if j != i:
                continue
            da = datum.root_data.d_alpha[a]
            db = datum.root_data.d_alpha[b]
            coeff = (
                c
                * (QScalar.q_power(da) - QScalar.q_power(-da))
                * (QScalar.q_power(db) - QScalar.q_power(-db))
                * qqm_i.inv()
                * (norms["drt_pibar"][a] * norms["drt_pi"][b]).inv()
            )
            Ea = AlgebraElement.root_vector(pres_h, +1, a)
            Fb = AlgebraElement.root_vector(pres_h, -1, b)
            terms.append((K * Ea, Fb, coeff))
    elif tag == "E":
        kb = _toral_binom_one(pres_h, datum.simple_roots[i])
        terms = [
            (one, E, ONE),
            (E, one, ONE),
            (E, kb, q_i_m1),
        ]
        K = _k_phi(pres_h, i)
        for (j, a, b), c in consts["C-"].items():
            if j != i:
                continue
            da = datum.root_data.d_alpha[a]
            db = datum.root_data.d_alpha[b]
            coeff = (
                -c
                * (QScalar.q_power(da) - QScalar.q_power(-da))
                * (QScalar.q_power(db) - QScalar.q_power(-db))
                * qqm_i.inv()
                * (norms["drt_pibar"][a] * norms["drt_pi"][b]).inv()
            )
            Ea = AlgebraElement.root_vector(pres_h, +1, a)
            Fb = AlgebraElement.root_vector(pres_h, -1, b)
            terms.append((Ea, Fb * K, coeff))
    elif tag == "L":
        mb = _h_generator(pres_h, "L", i)
        M = AlgebraElement.toral(pres_h, tuple(1 if k == i else 0 for k in range(pres_h.n)))
        terms = [
            (mb, one, ONE),
            (one, mb, ONE),
            (mb, mb, q_i_m1),
        ]
        # (2)_(q^-1)^2 (d_i)_q^-1 * sum_gamma (q-1)[d_gamma]_q [(mu_i|gamma)]_q
        #   M E_gamma (x) F_gamma M
        from .qcoeff import gauss_number, q_number

        two_qm1 = QScalar.from_laurent(gauss_number(2, 1).bar())
        di_q = QScalar.from_laurent(gauss_number(datum.d[i], 1))
        qm1 = QScalar.from_laurent(LaurentPoly({1: Fraction(1), 0: Fraction(-1)}))
        mu_i = tuple(datum.lattice_m[r][i] for r in range(datum.n))
        for g in range(pres_h.N):
            dg = datum.root_data.d_alpha[g]
            pairing = datum.bilinear(mu_i, datum.root_data.positive_roots[g])
            if pairing.denominator != 1:
                raise PresentationMismatch("non-integral (mu_i|gamma)")
            # no structure constant here, so the basis translation contributes
            # one 1/rho factor, not two
            coeff = (
                two_qm1**2
                * di_q.inv()
                * qm1
                * QScalar.from_laurent(q_number(dg, 1))
                * QScalar.from_laurent(q_number(int(pairing), 1))
                * norms["drt_pi"][g].inv()
            )
            Eg = AlgebraElement.root_vector(pres_h, +1, g)
            Fg = AlgebraElement.root_vector(pres_h, -1, g)
            terms.append((M * Eg, Fg * M, coeff))
    else:
        raise ValueError(f"unknown generator tag {tag!r}")
    return [(l, r, c) for l, r, c in terms if not c.is_zero()]


def _toral_binom_one(pres_h, weight) -> AlgebraElement:
    """(L^phi_w; 0, 1) = (L^phi_w - 1)/(q_i - 1) built with q_i from the
    weight's own d (here always a simple root alpha_i)."""
    datum = pres_h.datum
    d = int(datum.bilinear(weight, weight) / 2)
    L = AlgebraElement.toral(pres_h, datum.mu_coords(weight))
    qm1 = QScalar.from_laurent(LaurentPoly({d: Fraction(1), 0: Fraction(-1)}))
    return (L - AlgebraElement.one(pres_h)) * qm1.inv()


def antipode_congruence_display(datum: CartanDatum, tag: str, i: int) -> AlgebraElement:
    """Displayed antipode congruence right-hand sides, modulo (q - q^-1)."""
    pres_h = presentation(datum, "dual_h")
    qi = datum.d[i]
    if tag == "F":
        F = _h_generator(pres_h, "F", i)
        Kinv = AlgebraElement.toral(
            pres_h, [-x for x in datum.mu_coords(datum.simple_roots[i])]
        )
        return -QScalar.q_power(-2 * qi) * (F * Kinv)
    if tag == "E":
        E = _h_generator(pres_h, "E", i)
        Kinv = AlgebraElement.toral(
            pres_h, [-x for x in datum.mu_coords(datum.simple_roots[i])]
        )
        return -QScalar.q_power(2 * qi) * (Kinv * E)
    if tag == "L":
        mb = _h_generator(pres_h, "L", i)
        Minv = AlgebraElement.toral(pres_h, tuple(-1 if k == i else 0 for k in range(pres_h.n)))
        return -(Minv * mb)
    raise ValueError(f"unknown generator tag {tag!r}")


def _sector_weight(datum, a, b):
    """Weight of the U-monomial sector E^a ... F^b in alpha coordinates."""
    roots = datum.root_data.roots_alpha
    n = datum.n
    out = [0] * n
    for r in range(len(a)):
        for k in range(n):
            out[k] += (a[r] - b[r]) * roots[r][k]
    return tuple(out)


def reconstruct_pair_series(datum: CartanDatum, pair_fn, height: int, window: int, weight=None):
    """Truncated coefficients of a functional on pairs over the tensor square
    of the dual-side evaluation basis: {((a1,mu1,b1),(a2,mu2,b2)): coeff}.

    weight, when given, prunes to sector pairs of that total weight (the
    functional is weight homogeneous)."""
    pres_u = presentation(datum.dual(), "full")
    sectors = _exps_by_height(datum, height)
    lams = _window_box(datum.n, window)
    mus = lams
    out: dict = {}
    for a1 in sectors:
        for b1 in sectors:
            w1 = _sector_weight(datum, b1, a1)
            for a2 in sectors:
                for b2 in sectors:
                    if sum(a1) + sum(b1) + sum(a2) + sum(b2) > height + 1:
                        continue
                    if weight is not None:
                        w2 = _sector_weight(datum, b2, a2)
                        if tuple(x + y for x, y in zip(w1, w2)) != weight:
                            continue
                    block = _solve_pair_sector(
                        datum, pres_u, pair_fn, (a1, b1), (a2, b2), mus, lams
                    )
                    for key, c in block.items():
                        out[key] = c
    return out


def _solve_pair_sector(datum, pres_u, pair_fn, left, right, mus, lams):
    """Slot-wise character solve on one sector pair."""
    a1, b1 = left
    a2, b2 = right
    values = {}
    any_nonzero = False
    for l1 in lams:
        u = _u_monomial(pres_u, a1, l1, b1)
        for l2 in lams:
            v = _u_monomial(pres_u, a2, l2, b2)
            val = pair_fn(u, v)
            values[(l1, l2)] = val
            any_nonzero = any_nonzero or not val.is_zero()
    if not any_nonzero:
        return {}
    # solve slot 1 for every fixed l2, then slot 2
    t1 = _char_matrix(datum, a1, b1, mus, lams)
    t2 = _char_matrix(datum, a2, b2, mus, lams)
    inter = {}
    for l2 in lams:
        vec = {l1: values[(l1, l2)] for l1 in lams if not values[(l1, l2)].is_zero()}
        sol = _solve_with_matrix(t1, mus, lams, vec)
        if sol is None:
            raise AmbiguousCharacters(f"window cannot separate sector {a1},{b1}")
        for mu1, c in sol:
            if not c.is_zero():
                inter.setdefault(mu1, {})[l2] = c
    out = {}
    for mu1, vec in inter.items():
        sol = _solve_with_matrix(t2, mus, lams, vec)
        if sol is None:
            raise AmbiguousCharacters(f"window cannot separate sector {a2},{b2}")
        for mu2, c in sol:
            if not c.is_zero():
                out[((a1, mu1, b1), (a2, mu2, b2))] = c
    return out


def _char_matrix(datum, a, b, mus, lams):
    """Evaluation of basis functionals (a, mu, b) on window monomials."""
    pres_u = presentation(datum.dual(), "full")
    cache = datum._cache.setdefault("char_matrix", {})
    key = (a, b, tuple(mus), tuple(lams))
    if key in cache:
        return cache[key]
    cols = []
    for mu in mus:
        mu_w = datum.weight_of_mu(mu)
        col = {}
        for lam in lams:
            v = eval_h_monomial(datum, a, mu_w, b, _u_monomial(pres_u, a, lam, b))
            if not v.is_zero():
                col[lam] = v
        cols.append((mu, col))
    cache[key] = cols
    return cols


def _solve_with_matrix(cols, mus, lams, target):
    from .pbw import express_in_span

    vecs = [col for _, col in cols]
    sol = express_in_span(vecs, target)
    if sol is None:
        return None
    return [(cols[k][0], c) for k, c in enumerate(sol)]


def umbral_congruence_check(datum: CartanDatum, tag: str, power: int = 2, height: int = 2, window: int = 1) -> dict:
    """Verify the displayed Delta congruence mod (q - q^-1)^power and the S
    congruence mod (q - q^-1) for one generator family.  The truncated dual
    coproduct/antipode of the generator is reconstructed extensionally, the
    displayed expression is subtracted, and every surviving coefficient must
    be divisible by the stated power."""
    if datum.type not in ("A1", "A2"):
        raise PresentationMismatch("umbral checks are desk scale: A1 and A2")
    pres_h = presentation(datum, "dual_h")
    pres_u = presentation(datum.dual(), "full")
    qqm = _qqm_poly()
    failures = []
    for i in range(datum.n):
        h = _h_generator(pres_h, tag, i)
        f = nu_embed(h)
        display = umbral_congruence_display(datum, tag, i)

        def diff_fn(u, v, f=f, display=display):
            val = f(u * v)
            for left, right, c in display:
                vl = quantum_poisson_pair(left, u)
                if not vl.is_zero():
                    val = val - c * vl * quantum_poisson_pair(right, v)
            return val

        weight = (0,) * datum.n if tag == "L" else _generator_weight(datum, tag, i)
        coeffs = reconstruct_pair_series(datum, diff_fn, height, window, weight=weight)
        for key, c in coeffs.items():
            if not c.divisible_by(qqm, power):
                failures.append(("delta", i, key, str(c)))
        # antipode congruence mod (q - q^-1), via single-slot reconstruction
        s_rhs = antipode_congruence_display(datum, tag, i)
        sf = dual_antipode(f)
        s_diff = DualFunctional(
            datum, lambda g, sf=sf, s_rhs=s_rhs: sf(g) - quantum_poisson_pair(s_rhs, g)
        )
        try:
            elem = reconstruct_series(s_diff, height, window + 1)
            for c in elem.terms.values():
                if not c.divisible_by(qqm, 1):
                    failures.append(("antipode", i, str(c)))
        except AmbiguousCharacters as exc:
            failures.append(("antipode-window", i, str(exc)))
        if not f(AlgebraElement.one(pres_u)).is_zero():
            failures.append(("counit", i, str(f(AlgebraElement.one(pres_u)))))
    report = {"generator": tag, "passed": not failures, "failures": failures}
    if failures:
        raise CongruenceFailure(str(report))
    return report


def _generator_weight(datum, tag, i):
    sign = -1 if tag == "F" else 1
    return tuple(sign * (1 if k == i else 0) for k in range(datum.n))
