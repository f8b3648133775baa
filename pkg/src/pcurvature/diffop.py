"""Differential operators and systems over F_q(x), and the slow baseline.

An operator L = a_r(x) d^r + ... + a_1(x) d + a_0(x) acts through its
companion system in the basis (1, d, ..., d^(r-1)): superdiagonal ones and
last row -a_0, ..., -a_(r-1), all divided by a_r.  We store the cleared
form A = A_tilde / f_A with polynomial entries.

naive_p_curvature iterates A_1 = -A, A_(i+1) = A_i' - A*A_i over the
rational function field, p - 1 steps, with no shortcuts: it is the oracle
every fast path is measured against.  Its invariant factors are rational a
priori; clearing denominators by f_A^p makes them polynomials in x^p, and
that cleared, compressed form is what the library reports everywhere.
"""

from dataclasses import dataclass

from . import bivar, linalg, polys
from .errors import (LeadingCoeffVanishes, NotInXp, ZeroLeadingCoefficient)
from .ratfunc import RatFuncField


@dataclass(frozen=True)
class DiffOperator:
    """L = sum of coeffs[i](x) * d^i, with coeffs[r] nonzero."""

    K: object
    coeffs: tuple

    def __post_init__(self):
        cc = [polys.trim(self.K, list(c)) for c in self.coeffs]
        if len(cc) < 2:
            raise ZeroLeadingCoefficient(
                "operator must have order at least 1")
        if not cc[-1]:
            raise ZeroLeadingCoefficient("leading coefficient a_r is zero")
        object.__setattr__(self, "coeffs", tuple(tuple(c) for c in cc))

    @property
    def order(self):
        return len(self.coeffs) - 1

    @property
    def degree(self):
        return max(len(c) - 1 for c in self.coeffs)

    @property
    def bidegree(self):
        return (self.degree, self.order)

    @property
    def leading(self):
        return list(self.coeffs[-1])


@dataclass(frozen=True)
class DiffSystem:
    """Y' = (A_tilde / f_A) * Y with polynomial A_tilde and f_A."""

    K: object
    f_A: tuple
    A_tilde: tuple

    def __post_init__(self):
        f = polys.trim(self.K, list(self.f_A))
        if not f:
            raise ZeroLeadingCoefficient("f_A must be nonzero")
        r = len(self.A_tilde)
        if r < 1 or any(len(row) != r for row in self.A_tilde):
            raise ValueError("A_tilde must be square of size >= 1")
        tidy = tuple(tuple(tuple(polys.trim(self.K, list(e))) for e in row)
                     for row in self.A_tilde)
        object.__setattr__(self, "f_A", tuple(f))
        object.__setattr__(self, "A_tilde", tidy)

    @property
    def size(self):
        return len(self.A_tilde)

    @property
    def degree(self):
        d = len(self.f_A) - 1
        for row in self.A_tilde:
            for e in row:
                d = max(d, len(e) - 1)
        return d

    def tilde_matrix(self):
        return [[list(e) for e in row] for row in self.A_tilde]

    def rational_matrix(self, R):
        """Entries of A = A_tilde / f_A in the given RatFuncField."""
        den = R.from_poly(list(self.f_A))
        return [[R.div(R.from_poly(list(e)), den) for e in row]
                for row in self.A_tilde]


def companion_of_operator(L):
    """The system satisfied by (y, y', ..., y^(r-1)) for solutions of L.

    f_A = a_r; A_tilde has a_r on the superdiagonal and -a_0, ..., -a_(r-1)
    as its last row, so A_tilde / a_r is the monic-normalized companion.
    """
    K = L.K
    r = L.order
    a_r = list(L.coeffs[-1])
    rows = []
    for i in range(r - 1):
        row = [[] for _ in range(r)]
        row[i + 1] = list(a_r)
        rows.append(row)
    rows.append([polys.neg(K, list(L.coeffs[j])) for j in range(r)])
    return DiffSystem(K, tuple(a_r), tuple(tuple(tuple(e) for e in row)
                                           for row in rows))


def naive_p_curvature(sys, p):
    """A_p by the defining recurrence, over F_q(x); exact and O(p) slow."""
    R = RatFuncField(sys.K)
    A = sys.rational_matrix(R)
    Ai = linalg.mat_neg(R, A)
    for _ in range(p - 1):
        dAi = linalg.mat_map(R.derivative, Ai)
        Ai = linalg.mat_sub(R, dAi, linalg.matmul(R, A, Ai))
    return Ai


def rational_invariant_factors(sys, p):
    """Invariant factors of A_p(x) over F_q(x), monic in T."""
    R = RatFuncField(sys.K)
    Ap = naive_p_curvature(sys, p)
    return R, linalg.invariant_factors_of(R, Ap)


def naive_invariant_factors(sys, p):
    """Baseline bivariate invariant factors, in the cleared convention.

    Scales the rational factors of A_p by f_A(x)^p (the factors of
    f_A^p * A_p), checks every coefficient is a polynomial with all
    x-exponents divisible by p, and compresses to X = x^p.
    """
    K = sys.K
    R, factors = rational_invariant_factors(sys, p)
    c = R.from_poly(list(sys.f_A))
    cp = R.one
    for _ in range(p):
        cp = R.mul(cp, c)
    out = []
    for f in factors:
        scaled = bivar.scale_similarity(R, f, cp)
        comp = []
        for coeff in scaled:
            if not R.is_polynomial(coeff):
                raise NotInXp(
                    "cleared invariant factor has a nonpolynomial "
                    "coefficient: " + R.format_elem(coeff))
            comp.append(bivar.compress_xp(K, R.to_poly(coeff), p))
        out.append(comp)
    return out


def theta_rewrite(L, a, ell, embed):
    """Coefficients b_0(theta), ..., b_(d+r)(theta) of L*d^d recentred at a.

    Uses t^j d^j = theta (theta - 1) ... (theta - j + 1) on each monomial
    of the shifted coefficients, valid in L*d^d because every t-power j is
    at most d and so at most the attached d-power.  Returns polynomials in
    theta over ell of degree <= d, the last one the constant a_r(a).
    """
    K = L.K
    d, r = L.bidegree
    shifted = []
    for c in L.coeffs:
        ce = [embed(x) for x in c]
        shifted.append(polys.taylor_shift(ell, ce, a))
    lead = shifted[-1][0] if shifted[-1] else ell.zero
    if lead == ell.zero:
        raise LeadingCoeffVanishes("a_r vanishes at the expansion point")
    falling = [[ell.one]]
    for j in range(1, d + 1):
        falling.append(polys.mul(
            ell, falling[-1], [ell.from_int(-(j - 1)), ell.one]))
    b = [[] for _ in range(d + r + 1)]
    for i in range(r + 1):
        for j, c in enumerate(shifted[i]):
            if c != ell.zero:
                e = i + d - j
                b[e] = polys.add(ell, b[e],
                                 polys.scale(ell, c, falling[j]))
    return b
