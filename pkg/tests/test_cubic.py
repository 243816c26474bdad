import itertools
import math

import pytest
from hypothesis import given, settings, strategies as st

from hlg._local import enumerate_primitive_zeros
from hlg.cubic import (
    SELMER_COMPANIONS,
    DiagonalCubicForm,
    cubefree_decomposition,
    cubic_global_search,
    cubic_local_solubility,
    selmer_companion_suite,
)
from hlg.errors import SingularForm
from hlg.forms import REAL


def brute_points(coeffs, h):
    """Every primitive zero in the box by plain triple enumeration, up to sign."""
    a, b, c = coeffs
    out = set()
    for x, y, z in itertools.product(range(-h, h + 1), repeat=3):
        if (x, y, z) == (0, 0, 0) or math.gcd(x, y, z) != 1:
            continue
        if a * x**3 + b * y**3 + c * z**3 == 0:
            first = next(t for t in (x, y, z) if t)
            out.add((x, y, z) if first > 0 else (-x, -y, -z))
    return out


def canon(pts):
    out = set()
    for p in pts:
        first = next(t for t in p if t)
        out.add(tuple(p) if first > 0 else tuple(-t for t in p))
    return out


class TestForm:
    def test_cubefree(self):
        assert cubefree_decomposition(16) == (2, 2)
        assert cubefree_decomposition(-54) == (-2, 3)
        f, scale = DiagonalCubicForm((16, 27, 5)).normalized()
        assert f.coeffs == (2, 1, 5) and scale == (2, 3, 1)

    def test_singular(self):
        with pytest.raises(SingularForm):
            DiagonalCubicForm((1, 0, 2))


class TestLocal:
    def test_selmer_curve_everywhere_locally_soluble(self):
        for p in (2, 3, 5):
            assert cubic_local_solubility((3, 4, 5), p).soluble
        v = cubic_local_solubility((3, 4, 5), REAL)
        x, y, z = v.witness
        assert abs(3 * x**3 + 4 * y**3 + 5 * z**3) < 1e-9

    def test_fermat(self):
        for p in (2, 3, 5, 7, 11):
            assert cubic_local_solubility((1, 1, 1), p).soluble

    def test_insoluble_example(self):
        # x^3 + 3 y^3 + 9 z^3 has no nontrivial 3-adic zero (descent)
        v = cubic_local_solubility((1, 3, 9), 3)
        assert not v.soluble
        assert v.certificate["kind"] == "exhausted-primitive-search"

    def test_good_prime_certificate(self):
        v = cubic_local_solubility((3, 4, 5), 7)
        assert v.soluble and v.certificate["kind"] == "hasse-bound"
        k = int(v.certificate["lifted_modulus"].split("^")[1])
        assert DiagonalCubicForm((3, 4, 5))(v.certificate["lifted_witness"]) % 7**k == 0

    def test_against_residue_oracle(self):
        checked = insoluble = 0
        for a, b, c in itertools.combinations_with_replacement(range(1, 7), 3):
            for p in (2, 3, 5):
                if (3 * a * b * c) % p:
                    continue
                oracle = bool(enumerate_primitive_zeros((a, b, c), 3, p, 6))
                got = cubic_local_solubility((a, b, c), p).soluble
                assert got == oracle, (a, b, c, p)
                checked += 1
                insoluble += not got
        assert checked > 100 and insoluble > 0


class TestGlobalSearch:
    def test_examples(self):
        assert cubic_global_search((60, 1, 1), 100) == [(0, 1, -1)]
        assert canon(cubic_global_search((1, 1, 1), 10)) == canon([(1, -1, 0), (1, 0, -1), (0, 1, -1)])
        assert cubic_global_search((60, 1, 1), 1) == [(0, 1, -1)]

    def test_against_triple_enumeration(self):
        for coeffs in [(1, 1, 1), (1, 1, -2), (1, 2, 3), (7, -1, -1), (2, 3, -5), (1, -9, 1)]:
            assert canon(cubic_global_search(coeffs, 12)) == brute_points(coeffs, 12), coeffs

    def test_workers_do_not_change_result(self):
        form = (1, 1, -9)
        assert cubic_global_search(form, 300, workers=3) == cubic_global_search(form, 300)

    def test_large_coefficients_exact_path(self):
        # forces the arbitrary-precision fallback
        big = 10**15
        assert cubic_global_search((big, -big, 1), 50) == [(1, 1, 0)]

    @settings(max_examples=40, deadline=None)
    @given(st.lists(st.integers(-9, 9).filter(bool), min_size=3, max_size=3),
           st.permutations([0, 1, 2]), st.lists(st.booleans(), min_size=3, max_size=3))
    def test_permutation_and_sign_invariance(self, coeffs, perm, flips):
        h = 15
        base = canon(cubic_global_search(coeffs, h))
        new_coeffs = [coeffs[perm[i]] * (-1 if flips[i] else 1) for i in range(3)]
        moved = canon(cubic_global_search(new_coeffs, h))
        mapped = set()
        for pt in base:
            mapped.add(tuple(pt[perm[i]] * (-1 if flips[i] else 1) for i in range(3)))
        assert moved == canon(mapped)

    def test_witnesses_exact(self):
        for coeffs in [(1, 1, -2), (1, 1, -9), (1, 1, -7)]:
            for pt in cubic_global_search(coeffs, 200):
                assert DiagonalCubicForm(coeffs)(pt) == 0


class TestSuite:
    def test_small_height(self):
        rep = selmer_companion_suite(height_bound=60, controls=[(1, 1, 1)])
        assert rep["all_ok"]
        assert [c["coeffs"] for c in rep["curves"]] == [list(c) for c in SELMER_COMPANIONS]
        assert [c["points"] for c in rep["curves"]] == [[], [], [], [], [[0, 1, -1]]]
        assert all(c["locally_soluble_everywhere"] for c in rep["curves"])
        control = rep["controls"][0]
        assert control["has_witnesses"] and len(control["points"]) == 3

    def test_failure_reported_not_raised(self):
        # a control that is locally insoluble is reported, and does not affect all_ok
        rep = selmer_companion_suite(height_bound=5, controls=[(1, 3, 9)])
        assert rep["all_ok"]
        assert rep["controls"][0]["locally_soluble_everywhere"] is False
