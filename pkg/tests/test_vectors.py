"""Tests for log-likelihood weights and cosine similarity."""

import random

import numpy as np
import pytest
from scipy.stats import chi2_contingency

from newsdesk_mcp.core.vectors import cosine, g2, llr_weights, load_background, vectorize, vectorize_counts


class TestG2:
    def test_matches_scipy_log_likelihood(self):
        rng = random.Random(11)
        compared = 0
        for _ in range(40):
            k11 = rng.randint(1, 50)
            n1 = k11 + rng.randint(1, 500)
            k21 = rng.randint(1, 50)
            n2 = k21 + rng.randint(1, 5000)
            ours = float(g2(k11, n1, k21, n2))
            if k11 * n2 > k21 * n1:
                table = np.array([[k11, n1 - k11], [k21, n2 - k21]])
                stat, _, _, _ = chi2_contingency(table, correction=False, lambda_="log-likelihood")
                assert ours == pytest.approx(stat, rel=1e-9, abs=1e-9)
                compared += 1
            else:
                assert ours == 0.0
        assert compared >= 20

    def test_vectorized(self):
        values = g2(np.array([10.0, 1.0]), 100.0, np.array([10.0, 1000.0]), 100000.0)
        assert values[0] > 0.0
        assert values[1] == 0.0

    def test_same_rate_scores_zero(self):
        assert float(g2(10, 100, 100, 1000)) == 0.0


class TestWeights:
    def test_under_represented_tokens_dropped(self):
        weights = llr_weights({"the": 1, "izmir": 50}, {"the": 62000}, 1000000)
        assert "the" not in weights
        assert weights["izmir"] > 0

    def test_shipped_background(self):
        model = load_background("en")
        assert model is not None
        assert model.count("the") == 62000
        assert model.total == 1000000
        assert load_background("xx") is None

    def test_without_background_uses_raw_counts(self, make_article):
        article = make_article(title="Flood flood rain")
        assert vectorize(article, None) == {"flood": 2.0, "rain": 1.0}
        assert vectorize_counts({}, None) == {}


class TestCosine:
    def test_identical_and_disjoint(self):
        u = {"a": 1.0, "b": 2.0}
        assert cosine(u, u) == pytest.approx(1.0)
        assert cosine(u, {"c": 3.0}) == 0.0
        assert cosine({}, u) == 0.0

    def test_scale_invariant(self):
        u = {"a": 1.0, "b": 2.0}
        v = {"a": 3.0, "c": 1.0}
        assert cosine(u, v) == pytest.approx(cosine({k: 10 * w for k, w in u.items()}, v))
        assert cosine(u, v) == pytest.approx(3.0 / (5 ** 0.5 * 10 ** 0.5))

    def test_integer_keys(self):
        assert cosine({1: 2, 7: 1}, {1: 4, 7: 2}) == pytest.approx(1.0)
