import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import linprog

from cyclectx.classical import (CorrelationData, cycle_expression, deterministic_data,
                                jpd_exists, noncontextual_bound, odd_sign_patterns,
                                original_bell_check, original_bell_classical_max,
                                suppes_zanotti_check)
from cyclectx.errors import EnumerationLimitError, InconsistentDataError
from cyclectx.quantum import cycle_correlations, theorem2_check
from cyclectx.scenario import build_cycle_scenario

from conftest import SQRT2


def brute_bound(n, signs):
    """Second enumeration: itertools order, pure Python ints."""
    return max(sum(signs[i] * a[i] * a[(i + 1) % n] for i in range(n))
               for a in itertools.product((-1, 1), repeat=n))


def scipy_feasible(n, averages, correlations):
    atoms = list(itertools.product((1, -1), repeat=n))
    rows, rhs = [[1.0] * len(atoms)], [1.0]
    for i, a in enumerate(averages):
        if a is not None:
            rows.append([x[i] for x in atoms])
            rhs.append(a)
    for i, c in enumerate(correlations):
        if c is not None:
            j = (i + 1) % n
            rows.append([x[i] * x[j] for x in atoms])
            rhs.append(c)
    res = linprog(np.zeros(len(atoms)), A_eq=np.array(rows), b_eq=np.array(rhs),
                  bounds=(0, None), method="highs")
    return res.status == 0


def assert_witness_reproduces(n, data, result):
    p = np.array(list(result.witness.values()))
    assert np.all(p >= 0)
    assert p.sum() == pytest.approx(1, abs=1e-9)
    for i, a in enumerate(data.averages):
        if a is not None:
            got = sum(k[i] * q for k, q in result.witness.items())
            assert got == pytest.approx(a, abs=1e-7)
    for (i, j), c in data.correlations.items():
        got = sum(k[i] * k[j] * q for k, q in result.witness.items())
        assert got == pytest.approx(c, abs=1e-7)


class TestBound:
    def test_four_cycle(self):
        r = noncontextual_bound(4, (1, 1, 1, -1))
        assert r.bound == 2 and isinstance(r.bound, int)
        assert cycle_expression((1, 1, 1, -1), r.assignment) == 2

    def test_all_plus(self):
        r = noncontextual_bound(4, (1, 1, 1, 1))
        assert r.bound == 4 and r.assignment == (1, 1, 1, 1)

    def test_three_cycle(self):
        assert noncontextual_bound(3, (1, -1, 1)).bound == 1

    def test_five_cycle(self):
        assert noncontextual_bound(5, "+,+,+,+,-").bound == 3

    def test_limits(self):
        with pytest.raises(ValueError):
            noncontextual_bound(2, (1, 1))
        with pytest.raises(EnumerationLimitError):
            noncontextual_bound(25, (1,) * 25)

    @pytest.mark.parametrize("n", range(3, 11))
    def test_every_pattern_matches_oracle(self, n):
        for signs in itertools.product((1, -1), repeat=n):
            r = noncontextual_bound(n, signs)
            assert r.bound == brute_bound(n, signs)
            assert cycle_expression(signs, r.assignment) == r.bound

    @pytest.mark.parametrize("n", range(3, 11))
    def test_odd_patterns_give_n_minus_two(self, n):
        for signs in odd_sign_patterns(n):
            assert noncontextual_bound(n, signs).bound == n - 2

    def test_even_patterns_give_n(self):
        for n in (4, 5, 6):
            for signs in itertools.product((1, -1), repeat=n):
                if signs.count(-1) % 2 == 0:
                    assert noncontextual_bound(n, signs).bound == n

    def test_large_n_chunked(self):
        signs = (1,) * 21 + (-1,)
        assert noncontextual_bound(22, signs).bound == 20

    @settings(max_examples=50, deadline=None)
    @given(st.lists(st.sampled_from([1, -1]), min_size=3, max_size=12))
    def test_assignment_reevaluates(self, signs):
        r = noncontextual_bound(len(signs), signs)
        assert cycle_expression(signs, r.assignment) == r.bound


class TestCorrelationData:
    def test_range_checked(self):
        with pytest.raises(InconsistentDataError):
            CorrelationData.from_cycle([1.5, 0, 0])

    def test_non_edge_rejected(self):
        with pytest.raises(InconsistentDataError):
            CorrelationData(4, correlations={(0, 2): 0.1})

    def test_orientation_normalized(self):
        d = CorrelationData(3, correlations={(0, 2): 0.3})
        assert d.correlation(2, 0) == 0.3
        assert d.cycle_vector() == [None, None, 0.3]


class TestJPDExists:
    def test_suppes_zanotti_triple_infeasible(self):
        r = jpd_exists(3, CorrelationData.from_cycle([1, -1, 1]))
        assert not r.feasible
        c = r.certificate
        assert c.value > c.bound + 1e-6

    def test_perfect_correlations_witness(self):
        data = CorrelationData.from_cycle([1, 1, 1])
        r = jpd_exists(3, data)
        assert r.feasible
        assert r.witness == pytest.approx({(1, 1, 1): 0.5, (-1, -1, -1): 0.5})

    def test_chsh_witness_correlations_infeasible(self, chsh_obs):
        v = theorem2_check(chsh_obs)
        corr = cycle_correlations(build_cycle_scenario(chsh_obs), v.witness_state)
        r = jpd_exists(4, CorrelationData.from_cycle(list(corr)))
        assert not r.feasible
        assert r.certificate.value == pytest.approx(2 * SQRT2, abs=1e-6)
        assert r.certificate.bound == pytest.approx(2, abs=1e-6)

    def test_certificate_is_valid_classically(self, rng):
        for _ in range(100):
            corr = rng.uniform(-1, 1, size=4)
            data = CorrelationData.from_cycle(list(corr))
            r = jpd_exists(4, data)
            if r.feasible:
                continue
            cert = r.certificate
            for a in itertools.product((1, -1), repeat=4):
                lhs = sum(cert.coefficients[f"<X{i + 1}X{(i + 1) % 4 + 1}>"] * a[i] * a[(i + 1) % 4]
                          for i in range(4))
                assert lhs <= cert.bound + 1e-7
            assert cert.value > cert.bound

    def test_fine_equivalence(self, rng):
        disagreements = 0
        for _ in range(1000):
            corr = rng.uniform(-1, 1, size=4)
            ineq = all(abs(sum(s * c for s, c in zip(signs, corr))) <= 2
                       for signs in odd_sign_patterns(4))
            disagreements += jpd_exists(4, CorrelationData.from_cycle(list(corr))).feasible != ineq
        assert disagreements == 0

    def test_matches_scipy(self, rng):
        for _ in range(200):
            n = int(rng.integers(3, 7))
            corr = [float(c) if rng.random() > 0.15 else None for c in rng.uniform(-1, 1, n)]
            avgs = [float(a) if rng.random() > 0.5 else None for a in rng.uniform(-1, 1, n)]
            data = CorrelationData.from_cycle(corr, avgs)
            r = jpd_exists(n, data)
            assert r.feasible == scipy_feasible(n, avgs, corr)
            if r.feasible:
                assert_witness_reproduces(n, data, r)

    def test_quantum_data_with_averages(self, rng):
        from cyclectx.instances import random_commuting_family, random_state
        from cyclectx.quantum import average
        for _ in range(20):
            x = random_commuting_family(5, 4, rng)
            rho = random_state(4, rng)
            s = build_cycle_scenario(x)
            data = CorrelationData.from_cycle(list(cycle_correlations(s, rho)),
                                              [average(rho, o) for o in x])
            r = jpd_exists(5, data)
            assert r.feasible
            assert_witness_reproduces(5, data, r)

    @settings(max_examples=40, deadline=None)
    @given(st.lists(st.sampled_from([1, -1]), min_size=3, max_size=8))
    def test_deterministic_data_feasible(self, a):
        n = len(a)
        data = deterministic_data(a)
        r = jpd_exists(n, data)
        assert r.feasible
        assert r.witness == pytest.approx({tuple(a): 1.0})
        for signs in itertools.product((1, -1), repeat=n):
            lhs = sum(s * c for s, c in zip(signs, data.cycle_vector()))
            assert lhs <= noncontextual_bound(n, signs).bound

    def test_sixteen_cycle(self):
        data = deterministic_data([1, -1] * 8)
        assert jpd_exists(16, data).feasible
        bad = CorrelationData.from_cycle([1.0] * 15 + [-1.0])
        assert not jpd_exists(16, bad).feasible

    def test_limits(self):
        with pytest.raises(EnumerationLimitError):
            jpd_exists(17, CorrelationData.from_cycle([0.0] * 17))
        with pytest.raises(InconsistentDataError):
            jpd_exists(4, CorrelationData.from_cycle([0.0] * 3))


class TestSuppesZanotti:
    def test_violation(self):
        r = suppes_zanotti_check(1, -1, 1)
        assert r.lhs == 3 and not r.satisfied and not r.jpd_criterion

    def test_boundary(self):
        r = suppes_zanotti_check(1, 1, 1)
        assert r.lhs == 1 and r.satisfied and r.jpd_criterion

    def test_zero(self):
        r = suppes_zanotti_check(0, 0, 0)
        assert r.lhs == 0 and r.satisfied

    def test_out_of_range(self):
        with pytest.raises(InconsistentDataError):
            suppes_zanotti_check(1.2, 0, 0)

    def test_agrees_with_feasibility(self, rng):
        for _ in range(1000):
            c12, c23, c31 = rng.uniform(-1, 1, size=3)
            r = suppes_zanotti_check(c12, c23, c31)
            assert r.jpd_criterion == jpd_exists(3, CorrelationData.from_cycle([c12, c23, c31])).feasible


class TestOriginalBell:
    def test_boundary(self):
        r = original_bell_check(1, 1, 1, 1)
        assert r.lhs == 1 and r.satisfied and r.status == "satisfied"

    def test_precondition_unmet(self):
        r = original_bell_check(1, 1, 1, 0.5)
        assert r.status == "precondition unmet" and r.lhs is None and r.satisfied is None

    def test_zero(self):
        assert original_bell_check(0, 0, 0, 1).lhs == 0

    def test_precision_window(self):
        assert original_bell_check(0, 0, 0, 1 - 5e-7).precondition_met
        assert not original_bell_check(0, 0, 0, 1 - 2e-6).precondition_met

    def test_classical_max(self):
        best, a = original_bell_classical_max()
        assert best == 1 and a[1] == a[2]

    def test_violated(self):
        assert original_bell_check(1, -1, 1, 1).status == "violated"
