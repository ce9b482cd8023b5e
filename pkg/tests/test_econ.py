import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from finopinion.econ.mlogit import (
    RankDeficient, Separation, SingularInformation, _inverse, add_intercept, fit_mlogit, information, loglik,
    probabilities, score_contributions, wald_p,
)
from finopinion.econ.panel import (
    CONTROLS, AlignmentError, DuplicateKey, EarningsRow, design_matrix, firm_sue, merge_firm_years, read_earnings,
    write_earnings,
)
from finopinion.econ.rank import RANK_TABLE, RankResult, rank_fit, rank_mwe, report_rows, significance
from finopinion.econ.sue import DegenerateSeries, MissingSue, categorize, compute_sue, unexpected_earnings

series = st.lists(st.floats(-1e3, 1e3), min_size=3, max_size=12)


def spread(xs):
    ue = np.diff(xs)
    return np.std(ue) > 1e-3 * max(1.0, np.abs(ue).max())


class TestSue:
    def test_matches_hand_computation(self):
        e = [1.0, 1.5, 1.2, 2.0, 2.1]
        assert np.allclose(compute_sue(e)[1:], oracles.sue_by_hand(e), atol=1e-12)
        assert math.isnan(compute_sue(e)[0])

    @given(series, st.floats(-1e3, 1e3))
    def test_translation_invariant(self, e, c):
        if not spread(e):
            return
        assert np.allclose(compute_sue(np.add(e, c))[1:], compute_sue(e)[1:], atol=1e-6)

    @given(series, st.floats(0.01, 100))
    def test_scale_invariant(self, e, a):
        if not spread(e):
            return
        assert np.allclose(compute_sue(np.multiply(e, a))[1:], compute_sue(e)[1:], atol=1e-6)

    @given(series)
    def test_standardized(self, e):
        if not spread(e):
            return
        s = compute_sue(e)[1:]
        assert abs(s.mean()) < 1e-9 and s.std(ddof=1) == pytest.approx(1.0)

    def test_gap_breaks_difference(self):
        ue = unexpected_earnings([1, 2, 4, 7], [2001, 2002, 2004, 2005])
        assert np.isnan(ue[0]) and ue[1] == 1 and np.isnan(ue[2]) and ue[3] == 3

    def test_missing_value_propagates(self):
        ue = unexpected_earnings([1, np.nan, 3, 5])
        assert np.isnan(ue[1]) and np.isnan(ue[2]) and ue[3] == 2

    @pytest.mark.parametrize("e", [[1, 2], [1, 2, 3, 4]])
    def test_degenerate(self, e):
        with pytest.raises(DegenerateSeries):
            compute_sue(e)

    @pytest.mark.parametrize("s,tau,y", [(1.2, 0.5, 1), (0.5, 0.5, 0), (-0.5, 0.5, 0), (-0.7, 1.0, 0),
                                         (-1.01, 1.0, -1), (0.0, 0.5, 0)])
    def test_categorize(self, s, tau, y):
        assert categorize(s, tau) == y

    def test_categorize_errors(self):
        with pytest.raises(MissingSue):
            categorize(float("nan"), 0.5)
        with pytest.raises(ValueError):
            categorize(1.0, 0)

    @given(st.floats(-10, 10), st.floats(0.05, 3), st.floats(0.05, 3))
    def test_nonzero_shrinks_with_tau(self, s, a, b):
        lo, hi = sorted((a, b))
        assert abs(categorize(s, hi)) <= abs(categorize(s, lo))


def row(cid, year, earnings, **controls):
    base = {c: 1.0 for c in CONTROLS}
    base.update(controls)
    return EarningsRow(cid, year, earnings, base)


class TestPanel:
    def earnings(self):
        return [row("A", 2001, 1.0), row("A", 2002, 1.4), row("A", 2003, 0.9), row("A", 2004, 2.0)]

    def test_merge_counts(self):
        filings = [("A", 2002), ("A", 2003), ("A", 2004), ("B", 2003), ("A", 2010)]
        panel, report = merge_firm_years(filings, self.earnings(), 0.5)
        assert [fy.fiscal_year for fy in panel] == [2002, 2003, 2004]
        assert report.joined == 3 and report.kept == 3 and report.dropped == {"no_earnings": 2}
        s = firm_sue(self.earnings())
        assert [fy.y for fy in panel] == [categorize(s[("A", y)], 0.5) for y in (2002, 2003, 2004)]
        assert panel[0].doc_id == "A_2002"

    def test_missing_control_dropped(self):
        e = self.earnings()
        e[2] = row("A", 2003, 0.9, z_score=None)
        panel, report = merge_firm_years([("A", 2002), ("A", 2003)], e, 0.5)
        assert [fy.fiscal_year for fy in panel] == [2002]
        assert report.dropped == {"z_score": 1}
        panel, _ = merge_firm_years([("A", 2003)], e, 0.5, controls=["size"])
        assert len(panel) == 1

    def test_first_year_has_no_sue(self):
        _, report = merge_firm_years([("A", 2001)], self.earnings(), 0.5)
        assert report.dropped == {"sue": 1}

    def test_duplicates(self):
        with pytest.raises(DuplicateKey):
            merge_firm_years([], self.earnings() + [row("A", 2002, 3.0)], 0.5)

    def test_csv_round_trip(self, tmp_path):
        e = self.earnings()
        e[1] = row("A", 2002, None, roe=None)
        path = tmp_path / "e.csv"
        write_earnings(path, e)
        assert read_earnings(path) == e

    def test_csv_missing_columns(self, tmp_path):
        path = tmp_path / "e.csv"
        path.write_text("company_id,earnings\nA,1\n")
        with pytest.raises(ValueError):
            read_earnings(path)

    def test_design(self):
        panel, _ = merge_firm_years([("A", 2002), ("A", 2004)], self.earnings(), 0.5)
        W = np.array([[0.5, 0.1], [0.0, 0.2], [9.0, 9.0]])
        docs = ["A_2004", "A_2002", "Z_1999"]
        d = design_matrix(panel, docs, W, ["m1", "m2"], ["m2", "m1"])
        assert d.X.shape == (2, 10) and d.columns == (*CONTROLS, "m2", "m1")
        assert d.X[0, -2:].tolist() == [0.2, 0.0] and d.X[1, -2:].tolist() == [0.1, 0.5]
        bare = design_matrix(panel, docs, W, ["m1", "m2"])
        assert bare.X.shape == (2, 8) and d.doc_ids == ("A_2002", "A_2004")

    def test_design_alignment(self):
        panel, _ = merge_firm_years([("A", 2002)], self.earnings(), 0.5)
        with pytest.raises(AlignmentError):
            design_matrix(panel, ["A_2002"], np.zeros((1, 1)), ["m1"], ["m9"])
        with pytest.raises(AlignmentError):
            design_matrix(panel, ["A_2003"], np.zeros((1, 1)), ["m1"], ["m1"])


def simulate(n, seed, b_neg=(-0.3, 0.8), b_pos=(0.2, -0.6)):
    rng = np.random.default_rng(seed)
    X = rng.normal(size=(n, 1))
    Z = add_intercept(X)
    P = oracles.mlogit_probs(Z, np.array(b_neg), np.array(b_pos))
    u = rng.random(n)
    y = np.where(u < P[:, 0], -1, np.where(u < P[:, 0] + P[:, 1], 0, 1))
    return X, y


class TestMlogit:
    @given(st.integers(0, 10_000))
    def test_probabilities_sum_to_one(self, seed):
        rng = np.random.default_rng(seed)
        Z = rng.normal(scale=5, size=(20, 3))
        P = probabilities(Z, rng.normal(scale=5, size=6))
        assert np.all(P >= 0) and np.allclose(P.sum(axis=1), 1, atol=1e-12)

    def test_probabilities_match_oracle(self):
        rng = np.random.default_rng(1)
        Z = rng.normal(size=(15, 3))
        b = rng.normal(size=(2, 3))
        assert np.allclose(probabilities(Z, b.ravel()), oracles.mlogit_probs(Z, b[0], b[1]), atol=1e-14)

    def test_zero_params(self):
        assert np.allclose(probabilities(np.ones((4, 2)), np.zeros(4)), 1 / 3)
        assert loglik(np.ones((3, 1)), np.array([-1, 0, 1]), np.zeros(2)) == pytest.approx(-3 * math.log(3))

    def test_score_sums_to_gradient(self):
        rng = np.random.default_rng(2)
        Z = add_intercept(rng.normal(size=(30, 2)))
        y = rng.integers(-1, 2, 30)
        theta = rng.normal(size=6)
        g = oracles.central_difference(lambda t: loglik(Z, y, t), theta)
        assert np.allclose(score_contributions(Z, y, theta).sum(axis=0), g, atol=1e-6)
        H = np.array([oracles.central_difference(lambda t: score_contributions(Z, y, t).sum(axis=0)[i], theta)
                      for i in range(6)])
        assert np.allclose(information(Z, theta), -H, atol=1e-5)

    def test_relabeling_invariance(self):
        X, y = simulate(400, 3)
        a = fit_mlogit(X, y)
        b = fit_mlogit(X, -y)
        assert np.allclose(a.params, b.params[:, ::-1], atol=1e-10)
        assert np.allclose(a.predict_proba(X), b.predict_proba(X)[:, ::-1], atol=1e-10)
        assert a.loglik == pytest.approx(b.loglik, abs=1e-10)

    def test_recovers_parameters(self):
        X, y = simulate(20_000, 4)
        fit = fit_mlogit(X, y)
        assert np.allclose(fit.params, [[-0.3, 0.2], [0.8, -0.6]], atol=0.08)
        assert fit.counts[-1] + fit.counts[0] + fit.counts[1] == 20_000 == fit.nobs

    def test_sandwich_close_to_model_covariance(self):
        X, y = simulate(5000, 5)
        fit = fit_mlogit(X, y)
        rel = np.linalg.norm(fit.cov_robust - fit.cov_model) / np.linalg.norm(fit.cov_model)
        assert rel < 0.1

    def test_sandwich_matches_direct_construction(self):
        X, y = simulate(200, 6)
        fit = fit_mlogit(X, y)
        ref = oracles.sandwich_direct(add_intercept(X), y, fit.params[:, 0], fit.params[:, 1])
        assert np.allclose(fit.cov_robust, ref, rtol=1e-9, atol=1e-14)

    def test_rank_deficient(self):
        X = np.column_stack([np.arange(10.0), 2 * np.arange(10.0)])
        with pytest.raises(RankDeficient):
            fit_mlogit(X, [0, 1, -1] * 3 + [0])
        with pytest.raises(RankDeficient):
            fit_mlogit(np.ones((10, 1)), [0, 1, -1] * 3 + [0])
        with pytest.raises(RankDeficient):
            fit_mlogit(np.zeros((2, 1)) + [[1], [2]], [0, 1])

    def test_singular_information(self):
        Z = np.column_stack([np.ones(5), np.zeros(5)])
        with pytest.raises(SingularInformation):
            _inverse(information(Z, np.zeros(4)))

    def test_separation_names_column(self):
        X = np.array([[-3.0], [-2.0], [-1.5], [0.0], [0.1], [-0.1], [1.5], [2.0], [3.0]])
        y = [-1, -1, -1, 0, 0, 0, 1, 1, 1]
        with pytest.raises(Separation) as err:
            fit_mlogit(X, y, columns=["w"])
        assert err.value.column == "w"

    def test_bad_outcome(self):
        with pytest.raises(ValueError):
            fit_mlogit(np.arange(6.0), [0, 1, 2, 0, 1, 2])

    def test_column_names(self):
        with pytest.raises(ValueError):
            fit_mlogit(np.zeros((10, 2)) + np.arange(20).reshape(10, 2) ** 1.5, [0, 1, -1] * 3 + [0], columns=["a"])

    def test_wald(self):
        X, y = simulate(300, 7)
        fit = fit_mlogit(X, y)
        p = wald_p(fit)
        z = fit.z()
        for k in range(2):
            for j in range(2):
                assert p[k, j] == pytest.approx(oracles.normal_two_sided_p(z[k, j]), abs=1e-10)
        fit.params[:] = 0
        assert np.all(wald_p(fit) == 1)
        fit.params[:] = 1.959963984540054 * fit.se()
        assert np.allclose(wald_p(fit), 0.05, atol=1e-3)
        with pytest.raises(ValueError):
            wald_p(fit, "hc9")


class TestRank:
    def test_table_symmetric(self):
        for (a, b), r in RANK_TABLE.items():
            assert RANK_TABLE[(b, a)] == r
        assert len(RANK_TABLE) == 9

    def test_significance(self):
        assert significance(0.4, 0.01) == "+" and significance(-0.4, 0.01) == "-"
        assert significance(0.4, 0.05) == "NSS"
        assert significance(0.4, 0.05, sig_level=0.1) == "+"

    @pytest.mark.parametrize("args,rank", [
        ((1.0, 0.01, -1.0, 0.01), "1st"), ((1.0, 0.01, 0.3, 0.4), "2nd"), ((0.1, 0.9, -2.0, 0.001), "3rd"),
        ((-1.0, 0.01, -1.0, 0.01), "4th"), ((0.5, 0.2, 0.5, 0.2), "5th"),
    ])
    def test_rank(self, args, rank):
        assert rank_mwe(*args) == rank

    def test_fit_rows(self):
        X, y = simulate(300, 8)
        fit = fit_mlogit(X, y, columns=["w"])
        rows = rank_fit(fit, names=["w"])
        assert [r.name for r in rows] == ["w"]
        assert len(rank_fit(fit)) == 2
        p = wald_p(fit)
        assert rows[0].p_neg == p[1, 0] and rows[0].coef_pos == fit.params[1, 1]

    def test_report_rows(self):
        rows = report_rows([RankResult("may decline", -0.5, 0.01, 0.2, 0.7, "3rd")], {"may decline": "negative"})
        assert rows[0] == ["name", "coef_neg", "p_neg", "coef_pos", "p_pos", "R(w)", "polarity"]
        assert rows[1] == ["may decline", "-0.5", "0.01", "0.2", "0.7", "3rd", "negative"]
        assert len(report_rows([])[0]) == 6
