import random
from fractions import Fraction
from itertools import product

import pytest

from fleckforge.axkatz import (
    CongruenceSystem,
    Constraint,
    axkatz_prime_verify,
    chevalley_warning_verify,
    corollary11_verify,
    hypothesis_16,
    lemma22_verify,
    theorem12_sum,
    verify_theorem12,
)
from fleckforge.exceptions import CeilingExceeded
from fleckforge.ivpoly import IntegerValuedPoly, eval_ivp
from fleckforge.multipoly import MultiPoly, eval_poly, parse_poly
from fleckforge.padic import binom_int

ONE = IntegerValuedPoly([1])
X = IntegerValuedPoly([0, 1])


def brute_theorem12_sum(system):
    """Oracle: plain double loop with exact arithmetic, gate tested per point."""
    p, n = system.p, system.n_vars
    total = 0
    for pt in product(range(p), repeat=n):
        prod = 1
        for c in system.constraints:
            v = eval_poly(c.f, pt)
            pa = p ** c.a
            if v % pa:
                prod = 0
                break
            prod *= eval_ivp(c.F, v // pa)
        total += prod
    return total


def _system(p, b, n, triples):
    return CongruenceSystem(p=p, b=b, n_vars=n, constraints=tuple(
        Constraint(f=parse_poly(text, n), a=a, F=F) for text, a, F in triples))


def test_hypothesis_16_examples():
    sys1 = _system(2, 2, 3, [("x1+x2+x3", 1, ONE)])
    holds, margin = hypothesis_16(sys1)
    assert holds and margin == 1  # RHS = 2, n = 3

    sys2 = _system(3, 1, 2, [("x1+x2", 1, ONE)])
    holds, margin = hypothesis_16(sys2)
    assert holds and margin == 1  # RHS = 1, n = 2

    empty = CongruenceSystem(p=5, b=1, n_vars=3, constraints=())
    holds, margin = hypothesis_16(empty)
    assert holds and margin == 3  # RHS = 0


def test_theorem12_sum_examples():
    sys1 = _system(2, 2, 3, [("x1+x2+x3", 1, ONE)])
    assert theorem12_sum(sys1, exact=True) == 4  # even-sum points of {0,1}^3

    sys2 = _system(2, 1, 4, [("x1+x2+x3+x4", 1, X)])
    assert theorem12_sum(sys2, exact=True) == 8  # 6*1 + 1*2

    sys3 = _system(2, 1, 3, [("x1+x2+x3", 1, IntegerValuedPoly([]))])
    assert theorem12_sum(sys3, exact=True) == 0  # zero weight polynomial


def test_modular_matches_exact():
    rng = random.Random(64)
    for _ in range(40):
        p = rng.choice([2, 3])
        b = rng.randint(1, 3)
        n = rng.randint(1, 6)
        m = rng.randint(0, 2)
        triples = []
        for _ in range(m):
            f = _random_nonzero(rng, n)
            a = rng.randint(0, 2)
            F = IntegerValuedPoly([rng.randint(-9, 9)
                                   for _ in range(rng.randint(1, 3))])
            triples.append((f, a, F))
        system = CongruenceSystem(p=p, b=b, n_vars=n, constraints=tuple(
            Constraint(f=f, a=a, F=F) for f, a, F in triples))
        exact = theorem12_sum(system, exact=True)
        assert exact == brute_theorem12_sum(system)
        assert theorem12_sum(system) == exact % p ** b


def _random_nonzero(rng, n_vars, max_deg=2):
    while True:
        terms = {}
        for _ in range(rng.randint(1, 4)):
            exps = [0] * n_vars
            for _ in range(rng.randint(0, max_deg)):
                exps[rng.randrange(n_vars)] += 1
            c = rng.randint(-5, 5)
            if c:
                key = tuple(exps)
                terms[key] = terms.get(key, 0) + c
        f = MultiPoly(n_vars, terms)
        if not f.is_zero:
            return f


def test_empty_system_counts_cube():
    system = CongruenceSystem(p=3, b=1, n_vars=4, constraints=())
    assert theorem12_sum(system, exact=True) == 81
    assert theorem12_sum(system) == 81 % 3


def test_verify_theorem12_examples():
    verdict = verify_theorem12(_system(2, 2, 3, [("x1+x2+x3", 1, ONE)]),
                               exact=True)
    assert verdict.sum == 4 and verdict.divisible and verdict.hypothesis_holds

    verdict = verify_theorem12(_system(2, 1, 4, [("x1+x2+x3+x4", 1, X)]),
                               exact=True)
    assert verdict.sum == 8 and verdict.divisible

    # hypothesis failure is a reported condition, never an error
    small = _system(2, 3, 1, [("x1", 1, ONE)])
    verdict = verify_theorem12(small, exact=True)
    assert not verdict.hypothesis_holds


def test_theorem12_random_sweep_no_violation():
    rng = random.Random(2025)
    count = 0
    while count < 100:
        p = rng.choice([2, 3])
        b = rng.randint(1, 3)
        m = rng.randint(1, 2)
        specs = [(rng.randint(1, 2), rng.randint(0, 2), rng.randint(0, 1))
                 for _ in range(m)]
        for n in range(1, 13):
            constraints = tuple(
                Constraint(f=_random_nonzero(rng, n, deg), a=a,
                           F=IntegerValuedPoly(
                               [rng.randint(-9, 9) for _ in range(l + 1)]),
                           l=l)
                for deg, a, l in specs)
            system = CongruenceSystem(p=p, b=b, n_vars=n,
                                      constraints=constraints)
            if hypothesis_16(system)[0]:
                break
        else:
            continue
        verify_theorem12(system)  # raises TheoremViolation on failure
        count += 1


def test_gate_equivalence_with_unit_weights():
    # with every F = 1 the gated weighted sum is exactly the gated count
    rng = random.Random(7)
    for _ in range(20):
        p = rng.choice([2, 3])
        n = rng.randint(1, 5)
        f = _random_nonzero(rng, n)
        a = rng.randint(0, 2)
        system = CongruenceSystem(p=p, b=1, n_vars=n,
                                  constraints=(Constraint(f=f, a=a, F=ONE),))
        direct = sum(1 for pt in product(range(p), repeat=n)
                     if eval_poly(f, pt) % p ** a == 0)
        assert theorem12_sum(system, exact=True) == direct


def test_corollary11_examples():
    v = corollary11_verify([parse_poly("x1+x2+x3+x4", 4)], 1, 1, [1], 2,
                           exact=True)
    assert v.sum == 8 and v.hypothesis_holds and v.divisible

    v = corollary11_verify([parse_poly("x1+x2+x3", 3)], 1, 2, [0], 2,
                           exact=True)
    assert v.sum == 4 and v.hypothesis_holds and v.divisible

    v = corollary11_verify([parse_poly("x1+x2", 2)], 1, 1, [0], 3, exact=True)
    assert v.sum == 3 and v.hypothesis_holds and v.divisible


def test_chevalley_examples():
    v = chevalley_warning_verify([parse_poly("x1+x2", 2)], 3)
    assert v.sum == 3 and v.divisible

    v = chevalley_warning_verify([parse_poly("x1*x2", 3)], 2)
    assert v.sum == 6 and v.divisible

    v = chevalley_warning_verify([MultiPoly(2, {(0, 0): 1})], 2)
    assert v.sum == 0 and v.divisible


def test_axkatz_examples():
    v = axkatz_prime_verify([parse_poly("x1+x2+x3", 3)], 2, 2)
    assert v.sum == 4 and v.hypothesis_holds and v.divisible

    v = axkatz_prime_verify([parse_poly("x1+x2+x3", 3)], 1, 3)
    assert v.sum == 9 and v.divisible

    # b = 1 reduces to the common-zero count statement
    polys = [parse_poly("x1*x2 + x3", 3)]
    assert axkatz_prime_verify(polys, 1, 3).sum == \
        chevalley_warning_verify(polys, 3).sum


def test_consistency_between_verifiers():
    rng = random.Random(404)
    for _ in range(15):
        p = rng.choice([2, 3])
        n = rng.randint(2, 5)
        polys = [_random_nonzero(rng, n) for _ in range(rng.randint(1, 2))]
        b = rng.randint(1, 2)
        ak = axkatz_prime_verify(polys, b, p)
        cor = corollary11_verify(polys, 1, b, [0] * len(polys), p, exact=True)
        assert ak.sum % p ** b == cor.sum % p ** b
        if b == 1:
            assert ak.sum == chevalley_warning_verify(polys, p).sum


def test_lemma22_examples():
    v = lemma22_verify([parse_poly("x1+x2", 2)], [1], 2, 3)
    assert v.sum == 18 and v.divisible

    v = lemma22_verify([parse_poly("x1", 3), parse_poly("x2", 3)], [1, 1], 1, 2)
    assert v.sum == 2 and v.divisible

    v = lemma22_verify([parse_poly("x1", 4), parse_poly("x2", 4)], [0, 0], 3, 2)
    assert v.sum == 16 and v.divisible  # cube cardinality


def test_lemma22_sweep():
    rng = random.Random(11)
    for p in (2, 3):
        for n in range(1, 7):
            for _ in range(6):
                m = rng.randint(1, 2)
                polys = [_random_nonzero(rng, n) for _ in range(m)]
                js = [rng.randint(0, 2) for _ in range(m)]
                degbound = sum(j * max(sum(e) for e in f.terms)
                               for j, f in zip(js, polys))
                for c in range(0, n + 1):
                    if degbound < (n - c + 1) * (p - 1):
                        v = lemma22_verify(polys, js, c, p)
                        assert v.divisible, (p, n, js, c)


def test_lemma22_matches_brute_force():
    rng = random.Random(13)
    for _ in range(15):
        p = rng.choice([2, 3])
        n = rng.randint(1, 4)
        polys = [_random_nonzero(rng, n)]
        j = rng.randint(0, 3)
        direct = sum(binom_int(eval_poly(polys[0], pt), j)
                     for pt in product(range(p), repeat=n))
        assert lemma22_verify(polys, [j], 0, p).sum == direct


def test_ceiling_refusal():
    system = _system(2, 1, 30, [("x1", 1, ONE)])
    with pytest.raises(CeilingExceeded) as err:
        theorem12_sum(system, ceiling=10 ** 6)
    assert err.value.required == 2 ** 30
    with pytest.raises(CeilingExceeded):
        theorem12_sum(system, exact=True, ceiling=10 ** 6)


def test_constraint_validation():
    with pytest.raises(ValueError):
        Constraint(f=MultiPoly(2), a=1, F=ONE)  # zero polynomial
    with pytest.raises(ValueError):
        Constraint(f=parse_poly("x1", 1), a=1, F=X, l=0)  # l below degree
    with pytest.raises(ValueError):
        CongruenceSystem(p=4, b=1, n_vars=1, constraints=())
