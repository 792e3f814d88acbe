"""Synthesis of a binomial-basis polynomial matching f(q)g(r) modulo p^b.

Given an integer-valued polynomial f of degree at most l and a residue
table g on [0, p^a - 1], this builds the interpolating polynomial

    P(x) = sum_{n=0}^{d} c_n C(x, n)

whose coefficients are the forward differences of F(x) = f(floor(x/p^a))
* g(x mod p^a), truncated at the maximal d whose coefficient-valuation
bound M_d stays below b.  The congruence P(p^a q + r) = f(q) g(r)
(mod p^b) then holds for every integer q.
"""
from __future__ import annotations

from dataclasses import dataclass

from .exceptions import GuaranteeError
from .fleck import factorial_bound, wan_bound, weisman_bound
from .ivpoly import IntegerValuedPoly, eval_ivp, forward_differences
from .padic import PrimePower, ord_int, phi_prime_power


@dataclass(frozen=True)
class ResidueTable:
    """One period [g(0), ..., g(p^a - 1)] of a function periodic mod p^a."""

    pp: PrimePower
    values: tuple[int, ...]

    def __init__(self, pp: PrimePower, values):
        values = tuple(int(v) for v in values)
        if len(values) != pp.modulus:
            raise ValueError(
                f"table must have exactly {pp.modulus} entries, got {len(values)}")
        object.__setattr__(self, "pp", pp)
        object.__setattr__(self, "values", values)

    def __getitem__(self, r: int) -> int:
        return self.values[r % self.pp.modulus]


@dataclass(frozen=True)
class NewtonPoly:
    """P(x) = sum c_n C(x, n) with per-coefficient valuation bounds.

    ``bound_records[n]`` is the proven lower bound M_n on ord_p(c_n);
    ``b`` is the target modulus exponent (congruences hold mod p^b).
    """

    coeffs: tuple[int, ...]
    pp: PrimePower
    b: int
    bound_records: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1


@dataclass(frozen=True)
class CongruenceReport:
    """Result of checking P(p^a q + r) = f(q) g(r) (mod p^b) on a grid."""

    ok: bool
    checked: int
    counterexample: tuple[int, int] | None  # (q, r), if any


def bound_M(d: int, pp: PrimePower, l: int) -> int:
    """The coefficient-valuation bound M_d: max of the totient-floor and
    factorial-valuation bounds at degree d."""
    return max(wan_bound(d, pp, l), factorial_bound(d, pp, l))


def max_degree(pp: PrimePower, l: int, b: int) -> int:
    """The maximal d with M_d < b, found by exhaustive scan.

    M_d is not assumed monotone; the scan runs to
    D* = l*p^a + ceil(p^(a-1)) + b*phi(p^a), beyond which the
    totient-floor term alone is >= b.  The result exists since M_0 <= 0.
    """
    if b < 1:
        raise ValueError(f"b must be >= 1, got {b}")
    half = pp.p ** (pp.a - 1) if pp.a >= 1 else 1  # ceil(p^(a-1))
    limit = l * pp.modulus + half + b * phi_prime_power(pp)
    best = None
    for d in range(limit + 1):
        if bound_M(d, pp, l) < b:
            best = d
    if best is None:
        raise GuaranteeError("no degree with M_d < b; M_0 <= 0 should make d = 0 valid")
    return best


def _table_of_F(pp: PrimePower, f: IntegerValuedPoly, g: ResidueTable, d: int) -> list[int]:
    """Values F(0..d) of F(x) = f(floor(x/p^a)) * g(x mod p^a)."""
    q = pp.modulus
    return [eval_ivp(f, x // q) * g.values[x % q] for x in range(d + 1)]


def synthesize(pp: PrimePower, b: int, f: IntegerValuedPoly, g: ResidueTable) -> NewtonPoly:
    """Construct the truncated interpolating polynomial for f(q)g(r) mod p^b.

    Coefficients are forward differences of F at 0; before returning,
    ord_p(c_n) >= M_n is asserted for every n (this is a theorem, so a
    failure raises GuaranteeError).
    """
    if g.pp != pp:
        raise ValueError("residue table built for a different prime power")
    l = max(f.degree_bound, 0)
    d = max_degree(pp, l, b)
    coeffs = forward_differences(_table_of_F(pp, f, g, d))
    records = tuple(bound_M(n, pp, l) for n in range(d + 1))
    for n, (c, m) in enumerate(zip(coeffs, records)):
        if ord_int(c, pp.p) < m:
            raise GuaranteeError(
                f"coefficient c_{n} = {c} has ord_{pp.p} below its bound {m}")
    return NewtonPoly(coeffs=tuple(coeffs), pp=pp, b=b, bound_records=records)


def eval_newton(P: NewtonPoly, x: int) -> int:
    """Exact value of sum c_n C(x, n); reduce mod p^b at the call site."""
    return eval_ivp(IntegerValuedPoly(P.coeffs), x)


def verify_theorem11(P: NewtonPoly, f: IntegerValuedPoly, g: ResidueTable,
                     b: int | None = None,
                     q_range: tuple[int, int] = (-25, 25)) -> CongruenceReport:
    """Check P(p^a q + r) = f(q) g(r) (mod p^b) over a finite q grid.

    ``q_range`` is inclusive and should straddle 0; every residue r in
    [0, p^a - 1] is checked for each q.  The congruence is a theorem, so
    failure means a bug; the first counterexample is reported.
    """
    if b is None:
        b = P.b
    pp = P.pp
    mod = pp.p ** b
    lo, hi = q_range
    checked = 0
    for q in range(lo, hi + 1):
        fq = eval_ivp(f, q)
        for r in range(pp.modulus):
            checked += 1
            if (eval_newton(P, pp.modulus * q + r) - fq * g.values[r]) % mod != 0:
                return CongruenceReport(ok=False, checked=checked,
                                        counterexample=(q, r))
    return CongruenceReport(ok=True, checked=checked, counterexample=None)


def wilson_lemma(pp: PrimePower, b: int, table) -> NewtonPoly:
    """Specialization to a bare periodic table: f = 1, g = table, a >= 1.

    Additionally asserts the classical degree bound
    d < b*phi(p^a) + p^(a-1) and the per-coefficient bound
    ord_p(c_n) >= floor((n - p^(a-1))/phi(p^a)).
    """
    if pp.a < 1:
        raise ValueError("wilson_lemma requires a >= 1")
    g = table if isinstance(table, ResidueTable) else ResidueTable(pp, table)
    P = synthesize(pp, b, IntegerValuedPoly([1]), g)
    cap = b * phi_prime_power(pp) + pp.p ** (pp.a - 1)
    if not P.degree < cap:
        raise GuaranteeError(f"degree {P.degree} not below {cap}")
    for n, c in enumerate(P.coeffs):
        if ord_int(c, pp.p) < weisman_bound(n, pp):
            raise GuaranteeError(f"c_{n} = {c} violates the periodic-table bound")
    return P


def periodicity_exponent(P: NewtonPoly, l: int) -> int:
    """Smallest N of the form b + max ord_p(k) over k in [1, max(d, l)].

    eval_newton(P, x + p^N) = eval_newton(P, x) (mod p^b) for all x.
    """
    top = max(P.degree, l)
    extra = max((int(ord_int(k, P.pp.p)) for k in range(1, top + 1)), default=0)
    return P.b + extra
