from fractions import Fraction

import numpy as np
import pytest

from romkit import markov
from romkit.markov import GroupElement, NotMixedError, analyze


class TestGroupElements:
    def test_generators_orthogonal(self):
        for p, M in markov.generators(4):
            assert GroupElement(p, tuple(map(tuple, M))).is_orthogonal()

    def test_canonical_form(self):
        a = markov._reduce(2, [[2, 0], [0, 2]])
        assert a == markov.identity(2)

    def test_step_matches_float(self):
        gen = markov.generators(2)[1]
        X = markov.identity(2)
        Y = markov.step(gen, markov.step(gen, X))
        G = np.array(gen[1], dtype=float) / np.sqrt(2)
        np.testing.assert_allclose(Y.as_float(), G @ G, atol=1e-14)

    def test_states_orthogonal(self):
        states = markov.enumerate_states(2)
        assert len(states) == 16
        assert all(s.is_orthogonal() for s in states)


class TestAnalyze:
    def test_n2(self):
        rep = analyze(2)
        assert (rep.state_count, rep.period, rep.cayley_diameter, rep.mixing_step) == (16, 2, 3, 3)
        assert rep.class_uniform_step == 2
        assert rep.distance_histogram == (1, 4, 7, 4)
        assert rep.per_step_supports[:4] == (1, 4, 8, 8)

    def test_exact_law_sums_to_one(self):
        law = markov.exact_distribution(2, 4)
        assert sum(law.values()) == Fraction(1)
        assert all(isinstance(p, Fraction) for p in law.values())

    def test_n4_never_exactly_mixes(self):
        with pytest.raises(NotMixedError):
            analyze(4, max_steps=6)
        rep = analyze(4, max_steps=6, require_mixing=False)
        assert rep.state_count == 384 and rep.period == 2 and rep.mixing_step is None

    def test_to_dict(self):
        d = analyze(2).to_dict()
        assert d["state_count"] == 16 and d["distance_histogram"] == [1, 4, 7, 4]

    def test_cap(self):
        with pytest.raises(ValueError):
            markov.enumerate_states(4, cap=50)

    def test_non_power_of_two(self):
        with pytest.raises(ValueError):
            analyze(3)
