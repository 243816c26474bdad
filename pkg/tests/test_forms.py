import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hlg.errors import RankMismatch, SingularForm, TooFewVariables
from hlg.forms import (
    REAL,
    DiagonalQuadraticForm,
    chevalley_zero,
    equivalent_over_Q,
    hasse_minkowski_decide,
    hilbert_symbol,
    infinitesimal_automorphisms,
    local_solubility,
    mordell_search,
    squarefree_part,
)
from hlg.padic import factor


# -- independent oracles -----------------------------------------------------

def brute_hilbert(a: int, b: int, p: int) -> int:
    """+1 iff z^2 = a x^2 + b y^2 has a primitive solution mod p^k.

    With squarefree a, b, k = 2 is exact for odd p and k = 5 for p = 2:
    any unit coordinate then has derivative valuation <= v(2) + 1, so a
    primitive residue solution at that precision lifts by Hensel.
    """
    a, b = squarefree_part(a), squarefree_part(b)
    k = 5 if p == 2 else 2
    m = p**k
    r = np.arange(m, dtype=np.int64)
    sq = r * r % m
    any_sq = np.zeros(m, bool)
    any_sq[sq] = True
    unit_sq = np.zeros(m, bool)
    unit_sq[sq[r % p != 0]] = True
    x = r[:, None]
    y = r[None, :]
    val = (a * x * x + b * y * y) % m
    both_div = (x % p == 0) & (y % p == 0)
    ok = np.where(both_div, unit_sq[val], any_sq[val])
    return 1 if ok.any() else -1


def brute_mordell(a, b, c, bound):
    for x, y, z in itertools.product(range(bound + 1), repeat=3):
        if (x, y, z) != (0, 0, 0) and a * x * x + b * y * y == c * z * z:
            return True
    return False


def places_of(a, b):
    primes = set(factor(2 * a * b))
    return [REAL] + sorted(primes)


# -- examples -------------------------------------------------------------------

class TestChevalley:
    def test_examples(self):
        for coeffs, p in [((1, 1, 1), 3), ((1, 1, -1), 7), ((2, 3, -5), 11)]:
            x = chevalley_zero(coeffs, p)
            assert any(t % p for t in x)
            assert sum(a * t * t for a, t in zip(coeffs, x)) % p == 0

    def test_two_variables_rejected(self):
        with pytest.raises(TooFewVariables):
            chevalley_zero((1, 1), 5)


class TestLocal:
    def test_x2_y2_minus_3z2_at_3(self):
        v = local_solubility((1, 1, -3), 3)
        assert not v.soluble
        assert v.certificate["kind"] == "exhausted-primitive-search"
        assert v.certificate["modulus"] == "3^2"

    def test_5_4_minus_3_at_5(self):
        v = local_solubility((5, 4, -3), 5)
        assert not v.soluble
        assert v.certificate["modulus"] == "5^2"

    def test_real(self):
        assert local_solubility((2, 3, -5), REAL).soluble
        assert not local_solubility((1, 2, 3), REAL).soluble
        assert not local_solubility((-1, -2, -3), REAL).soluble

    def test_witness_is_certified(self):
        for coeffs in [(1, 1, -2), (3, 5, -7), (2, 7, -1)]:
            form = DiagonalQuadraticForm(coeffs)
            for p in form.bad_primes():
                v = local_solubility(form, p)
                if v.soluble and "lifted_witness" in v.certificate:
                    k = int(v.certificate["lifted_modulus"].split("^")[1])
                    assert form(v.certificate["lifted_witness"]) % p**k == 0

    def test_degenerate(self):
        with pytest.raises(SingularForm):
            DiagonalQuadraticForm((1, 0, 1))


class TestHilbert:
    def test_examples(self):
        assert hilbert_symbol(-1, -1, REAL) == -1
        assert hilbert_symbol(2, 7, 7) == 1
        for v in (REAL, 2, 3, 5, 7):
            assert hilbert_symbol(1, -13, v) == 1
        assert hilbert_symbol(-1, -1, 2) == -1

    def test_formula_matches_brute_force(self):
        for a in range(-30, 31):
            for b in range(-30, 31):
                if a == 0 or b == 0:
                    continue
                for v in places_of(a, b)[1:]:
                    assert hilbert_symbol(a, b, v) == brute_hilbert(a, b, v), (a, b, v)

    def test_formula_matches_local_solubility(self):
        # z^2 = a x^2 + b y^2 is the form (a, b, -1)
        for a, b in itertools.product([-6, -3, -2, -1, 2, 3, 5, 6, 10], repeat=2):
            for v in places_of(a, b):
                assert (hilbert_symbol(a, b, v) == 1) == local_solubility((a, b, -1), v).soluble

    def test_product_formula(self):
        for a in range(-30, 31):
            for b in range(-30, 31):
                if a and b:
                    prod = 1
                    for v in places_of(a, b):
                        prod *= hilbert_symbol(a, b, v)
                    assert prod == 1, (a, b)

    @given(st.integers(-500, 500).filter(bool), st.integers(-500, 500).filter(bool),
           st.integers(-500, 500).filter(bool))
    def test_bilinear_symmetric(self, a, b, c):
        for v in set(places_of(a * c, b)):
            assert hilbert_symbol(a, b, v) == hilbert_symbol(b, a, v)
            assert hilbert_symbol(a * c, b, v) == hilbert_symbol(a, b, v) * hilbert_symbol(c, b, v)


class TestGlobal:
    def test_examples(self):
        g = hasse_minkowski_decide((1, 1, -2))
        assert g.soluble and g.witness is not None
        assert DiagonalQuadraticForm((1, 1, -2))(g.witness) == 0
        g = hasse_minkowski_decide((1, 1, -3))
        assert not g.soluble and g.obstruction == 3
        assert g.obstructions == [2, 3]
        g = hasse_minkowski_decide((2, 3, -5))
        assert g.soluble and DiagonalQuadraticForm((2, 3, -5))(g.witness) == 0

    def test_mordell_examples(self):
        assert mordell_search(1, 1, 2).witness is not None
        assert mordell_search(5, 4, 3).witness is None
        w = mordell_search(1, 1, 1).witness
        assert w[0] ** 2 + w[1] ** 2 == w[2] ** 2 and w != (0, 0, 0)

    def test_mordell_matches_plain_box(self):
        # the plain Mordell box on the original coefficients, no reduction
        for a, b, c in itertools.product(range(1, 9), repeat=3):
            bound = max(int((b * c) ** 0.5), int((c * a) ** 0.5), int((a * b) ** 0.5))
            assert (mordell_search(a, b, c).witness is not None) == brute_mordell(a, b, c, bound), (a, b, c)

    def test_witness_primitive(self):
        for a, b, c in [(1, 1, 2), (3, 5, 2), (7, 2, 1), (6, 10, 15), (12, 3, 15)]:
            r = mordell_search(a, b, c)
            if r.witness:
                x, y, z = r.witness
                assert a * x * x + b * y * y == c * z * z
                assert np.gcd.reduce([x, y, z]) == 1

    def test_decide_vs_search_small(self):
        for a, b, c in itertools.product(range(1, 8), repeat=3):
            assert hasse_minkowski_decide((a, b, -c)).soluble == (mordell_search(a, b, c).witness is not None)

    def test_binary(self):
        assert hasse_minkowski_decide((1, -4)).soluble
        assert not hasse_minkowski_decide((1, -2)).soluble
        assert not hasse_minkowski_decide((1, 1)).soluble

    def test_quaternary(self):
        assert hasse_minkowski_decide((1, 1, 1, -3)).soluble
        assert not hasse_minkowski_decide((1, 1, 1, -7)).soluble  # 7 is not a sum of three squares
        assert not hasse_minkowski_decide((1, 1, 1, 1)).soluble


class TestEquivalence:
    def test_examples(self):
        assert equivalent_over_Q((1, 1), (1, 1))[0]
        eq, rep = equivalent_over_Q((1, 1), (1, -1))
        assert not eq and REAL in rep["disagreements"]
        assert equivalent_over_Q((1, 5), (5, 1))[0]
        assert equivalent_over_Q((1, 1), (2, 2))[0]  # (x+y)^2 + (x-y)^2
        assert not equivalent_over_Q((1, 1), (1, 3))[0]

    def test_rank_mismatch(self):
        with pytest.raises(RankMismatch):
            equivalent_over_Q((1, 1), (1, 1, 1))

    def test_equivalence_relation(self):
        pool = [c for c in itertools.product([-3, -1, 1, 2, 3, 5, 6], repeat=2)]
        rel = {(f, g): equivalent_over_Q(f, g)[0] for f in pool for g in pool}
        for f in pool:
            assert rel[f, f]
            for g in pool:
                assert rel[f, g] == rel[g, f]
                if rel[f, g]:
                    for h in pool:
                        if rel[g, h]:
                            assert rel[f, h]

    @settings(max_examples=60, deadline=None)
    @given(st.lists(st.integers(-12, 12).filter(bool), min_size=2, max_size=4),
           st.lists(st.integers(1, 6), min_size=4, max_size=4))
    def test_square_scaling_invariant(self, coeffs, squares):
        scaled = [a * s * s for a, s in zip(coeffs, squares)]
        assert equivalent_over_Q(coeffs, scaled)[0]


class TestInfinitesimal:
    def test_examples(self):
        assert infinitesimal_automorphisms((1, 1, 1), 3).dimension == 0
        assert infinitesimal_automorphisms((1, 1, 1), 2).dimension == 3
        assert infinitesimal_automorphisms((1, 1, 1, 1), 4).dimension == 0

    def test_quadric_dimensions(self):
        # so(n) has dimension n(n-1)/2
        for n in (2, 3, 4):
            assert infinitesimal_automorphisms((1,) * n, 2).dimension == n * (n - 1) // 2

    def test_basis_annihilates(self):
        r = infinitesimal_automorphisms((1, 2, 3), 2)
        for m in r.basis:
            # A^T D + D A = lambda D for D = diag(1, 2, 3), trace-free A gives lambda = 0
            D = [1, 2, 3]
            for i in range(3):
                for j in range(3):
                    assert m[j][i] * D[j] + D[i] * m[i][j] == 0

    def test_singular(self):
        with pytest.raises(SingularForm):
            infinitesimal_automorphisms((1, 0, 1), 3)

    def test_higher_degree_all_zero(self):
        for d in (3, 4):
            for n in (2, 3, 4):
                for coeffs in itertools.product(range(1, 6), repeat=n):
                    if list(coeffs) != sorted(coeffs):
                        continue
                    assert infinitesimal_automorphisms(coeffs, d).dimension == 0
