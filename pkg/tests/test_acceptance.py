"""The twelve acceptance criteria, one test each, at the required tolerances."""

import json
import math
import shutil
import tempfile
import time
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from finopinion.cli import main
from finopinion.crf import CrfModel, TrainConfig, load_model, log_partition, loglik_and_gradient, save_model, viterbi
from finopinion.econ import DegenerateSeries, compute_sue, fit_mlogit, rank_mwe
from finopinion.econ.rank import NEG, NSS, POS
from finopinion.evaluation import f_measure, phrase_prf, token_accuracy
from finopinion.feature_sets import feature_config
from finopinion.lingdata import parse_record, serialize_record
from finopinion.mwe import mwef_idf
from finopinion.synthetic import token_determined_corpus
from finopinion.tagging import tag_records, train_tagger
from strategies import crf_models, records


def report(n, ok, detail=""):
    print(f"criterion {n}: {'PASS' if ok else 'FAIL'} {detail}".rstrip())


def random_instance(rng, order):
    L = int(rng.integers(2, 5))
    n_attr = int(rng.integers(2, 7))
    labels = [f"y{i}" for i in range(L)]
    model = CrfModel.zeros(labels, {f"a{i}": i for i in range(n_attr)}, order, gaussian_variance=10.0)
    model.set_weights(rng.normal(scale=0.7, size=model.n_weights))
    examples = []
    for _ in range(int(rng.integers(1, 6))):
        T = int(rng.integers(1, 7))
        compiled = [[f"a{j}" for j in range(n_attr) if rng.random() < 0.5] for _ in range(T)]
        tags = [labels[int(rng.integers(L))] for _ in range(T)]
        examples.append((compiled, tags))
    return model, examples


@pytest.mark.criterion(1, "CRF gradient vs central differences")
def test_c01_gradient_check():
    rng = np.random.default_rng(101)
    start = time.perf_counter()
    worst = 0.0
    for k in range(10):
        model, examples = random_instance(rng, order=1 + k % 2)
        w0 = model.weights
        _, grad = loglik_and_gradient(model, examples)

        def value(w):
            model.set_weights(w)
            return loglik_and_gradient(model, examples)[0]

        fd = oracles.central_difference(value, w0, h=1e-5)
        model.set_weights(w0)
        worst = max(worst, float(np.linalg.norm(grad - fd) / max(np.linalg.norm(fd), 1e-12)))
    elapsed = time.perf_counter() - start
    ok = worst < 1e-5 and elapsed < 2.0
    report(1, ok, f"max relative error {worst:.2e}, {elapsed:.2f}s")
    assert worst < 1e-5
    assert elapsed < 2.0


@pytest.mark.criterion(2, "exact inference vs exhaustive enumeration")
def test_c02_brute_force_inference():
    rng = np.random.default_rng(202)
    worst_z = worst_v = 0.0
    for k in range(100):
        T, L = int(rng.integers(1, 7)), int(rng.integers(1, 5))
        E = rng.normal(scale=2.0, size=(T, L))
        trans = rng.normal(size=(L, L))
        tri = rng.normal(size=(L, L, L)) if k % 2 else None
        worst_z = max(worst_z, abs(log_partition(E, trans, tri) - oracles.brute_log_partition(E, trans, tri)))
        path, score = viterbi(E, trans, tri)
        ref_path, ref = oracles.brute_best(E, trans, tri)
        worst_v = max(worst_v, abs(score - ref))
        assert tuple(path) == ref_path
    ok = worst_z <= 1e-8 and worst_v <= 1e-9
    report(2, ok, f"log Z error {worst_z:.1e}, Viterbi error {worst_v:.1e}")
    assert worst_z <= 1e-8
    assert worst_v <= 1e-9


@pytest.mark.criterion(3, "learnability on a token-determined corpus")
def test_c03_learnability():
    corpus = token_determined_corpus(250, seed=3)
    train, test = corpus[:200], corpus[200:]
    start = time.perf_counter()
    model = train_tagger(train, feature_config(["f1"]), TrainConfig(max_iterations=500, gaussian_variance=10.0))
    scores = phrase_prf(test, tag_records(model, test))
    elapsed = time.perf_counter() - start
    ok = scores.micro.F == 100.0 and elapsed < 30.0
    report(3, ok, f"phrase F1 {scores.micro.F:.2f}, {elapsed:.2f}s")
    assert scores.micro.F == 100.0
    assert elapsed < 30.0


@pytest.mark.criterion(4, "order 2 with zero trigram weights equals order 1")
def test_c04_order_two_consistency():
    rng = np.random.default_rng(404)
    labels = ["O", "B-agent", "I-agent", "B-target"]
    attrs = {f"a{i}": i for i in range(8)}
    first = CrfModel.zeros(labels, attrs, 1)
    first.set_weights(rng.normal(size=first.n_weights))
    second = CrfModel.zeros(labels, attrs, 2)
    second.emission, second.transition = first.emission.copy(), first.transition.copy()
    same = 0
    for _ in range(50):
        T = int(rng.integers(1, 15))
        compiled = [[f"a{j}" for j in range(8) if rng.random() < 0.4] for _ in range(T)]
        same += first.decode(compiled) == second.decode(compiled)
        assert second.decode_with_score(compiled)[1] == pytest.approx(first.decode_with_score(compiled)[1], abs=1e-12)
    report(4, same == 50, f"{same}/50 identical decodes")
    assert same == 50


@pytest.mark.criterion(5, "F-measure reference values")
def test_c05_f_measure():
    a, b = f_measure(70.84, 38.28, 1), f_measure(58.66, 39.69, 1)
    ok = abs(a - 49.70) <= 0.01 and abs(b - 47.35) <= 0.01
    report(5, ok, f"{a:.4f}, {b:.4f}")
    assert a == pytest.approx(49.70, abs=0.01)
    assert b == pytest.approx(47.35, abs=0.01)


@pytest.mark.criterion(6, "phrase vs token scoring contract")
def test_c06_phrase_vs_token():
    gold = ["B-expressive-subjectivity"] + ["I-expressive-subjectivity"] * 4
    pred = gold[:4] + ["O"]
    acc = token_accuracy(gold, pred)
    scores = phrase_prf([gold], [pred])
    p = scores.row("expressive-subjectivity").p
    ok = acc == 80.0 and p == 0.0 and scores.micro.p == 0.0
    report(6, ok, f"token accuracy {acc}, phrase precision {p}")
    assert acc == 80.0
    assert p == 0.0
    assert scores.micro.p == 0.0


@pytest.mark.criterion(7, "SUE oracle and degenerate series")
def test_c07_sue():
    last = float(compute_sue([1, 2, 4, 3])[-1])
    assert last == pytest.approx(oracles.sue_by_hand([1, 2, 4, 3])[-1], abs=1e-12)
    with pytest.raises(DegenerateSeries):
        compute_sue([1, 2, 3, 4])
    ok = abs(last - (-1.0911)) <= 1e-4
    report(7, ok, f"SUE_last {last:.6f}")
    assert last == pytest.approx(-1.0911, abs=1e-4)


def _three_class_data(n, seed):
    rng = np.random.default_rng(seed)
    X = rng.normal(size=(n, 2))
    Z = np.column_stack([np.ones(n), X])
    P = oracles.mlogit_probs(Z, np.array([-0.3, 0.8, -0.5]), np.array([0.2, -0.6, 0.9]))
    u = rng.random(n)
    y = np.where(u < P[:, 0], -1, np.where(u < P[:, 0] + P[:, 1], 0, 1))
    return X, Z, y


MLOGIT_10_X = np.array([[0.1], [1.2], [-0.7], [2.0], [-1.5], [0.3], [0.9], [-0.2], [1.6], [-1.1]])
MLOGIT_10_Y = np.array([0, 1, -1, -1, 1, 0, -1, 1, 1, 0])


@pytest.mark.criterion(8, "multinomial logit correctness")
def test_c08_mlogit():
    X, Z, y = _three_class_data(300, seed=11)
    fit = fit_mlogit(X, y)
    P = oracles.mlogit_probs(Z, fit.params[:, 0], fit.params[:, 1])
    Y = np.stack([y == -1, y == 1], axis=1).astype(float)
    grad = float(np.max(np.abs(Z.T @ (Y - P[:, [0, 2]]))))
    b_neg, b_pos, iters = oracles.gradient_ascent_mlogit(Z, y)
    gap = float(max(np.max(np.abs(fit.params[:, 0] - b_neg)), np.max(np.abs(fit.params[:, 1] - b_pos))))

    balanced = np.repeat([-1, 0, 1], 10)
    icpt = fit_mlogit(np.empty((30, 0)), balanced).params
    icpt_err = float(np.max(np.abs(icpt)))

    small = fit_mlogit(MLOGIT_10_X, MLOGIT_10_Y)
    Z10 = np.column_stack([np.ones(10), MLOGIT_10_X])
    direct = oracles.sandwich_direct(Z10, MLOGIT_10_Y, small.params[:, 0], small.params[:, 1])
    sw_err = float(np.max(np.abs(small.cov_robust - direct)))

    ok = grad < 1e-8 and gap <= 1e-4 and icpt_err <= 1e-10 and sw_err <= 1e-10
    report(8, ok, f"(a) {grad:.1e} (b) {gap:.1e} after {iters} oracle steps (c) {icpt_err:.1e} (d) {sw_err:.1e}")
    assert grad < 1e-8
    assert iters < 400_000
    assert gap <= 1e-4
    assert icpt_err <= 1e-10
    assert sw_err <= 1e-10


REFERENCE_ROWS = {
    "v20": ((11.19, 0.015, -1.931, 0.708), "2nd"),
    "v31": ((3.267, 0.011, 0.245, 0.878), "2nd"),
    "v64": ((9.755, 0.045, 3.317, 0.470), "2nd"),
    "v100": ((-3.568, 0.325, -10.53, 0.020), "3rd"),
    "v108": ((-2.298, 0.237, -3.792, 0.041), "3rd"),
    "v81": ((-0.984, 0.712, 2.222, 0.314), "5th"),
    "v59": ((0.398, 0.894, -5.054, 0.133), "5th"),
}

TRUTH = {
    (POS, NEG): "1st", (NEG, POS): "1st", (POS, NSS): "2nd", (NSS, POS): "2nd",
    (NEG, NSS): "3rd", (NSS, NEG): "3rd", (POS, POS): "4th", (NEG, NEG): "4th", (NSS, NSS): "5th",
}


def _inputs(sign):
    # coefficient and p-value realizing one significance outcome at the 0.05 level
    return {POS: (1.5, 0.01), NEG: (-1.5, 0.01), NSS: (1.5, 0.40)}[sign]


@pytest.mark.criterion(9, "rank truth table and reference coefficient rows")
def test_c09_rank():
    hits = 0
    for (s_neg, s_pos), expected in TRUTH.items():
        hits += rank_mwe(*_inputs(s_neg), *_inputs(s_pos)) == expected
    rows = sum(rank_mwe(*args) == rank for args, rank in REFERENCE_ROWS.values())
    ok = hits == 9 and rows == len(REFERENCE_ROWS)
    report(9, ok, f"{hits}/9 combinations, {rows}/{len(REFERENCE_ROWS)} reference rows")
    assert hits == 9
    assert rows == len(REFERENCE_ROWS)


@pytest.mark.criterion(10, "MWEf-idf properties")
def test_c10_mwef_idf():
    failures = 0
    for N in range(1, 41):
        for n in range(1, N + 1):
            prev = -math.inf
            for f in range(0, 31):
                w = mwef_idf(f, n, N)
                failures += w < prev
                prev = w
                if n > 1:
                    failures += mwef_idf(f, n - 1, N) < w
                if f == 0:
                    failures += w != 0.0
                if n == N and f >= 1:
                    failures += not w > 0
    report(10, failures == 0, f"{failures} violations on the integer grid")
    assert failures == 0


def _pipeline(config: Path, out: Path) -> None:
    steps = [
        ["extract", "--config", str(config), "--out-dir", str(out)],
        ["train", "--config", str(config), "--out-dir", str(out)],
        ["tag", "--config", str(config), "--records", str(out / "candidates.jsonl"),
         "--model", str(out / "model.crf"), "--out-dir", str(out)],
        ["analyze", "--config", str(config), "--tagged", str(out / "tagged.jsonl"), "--out-dir", str(out)],
        ["report", "--config", str(config), "--regression", str(out / "regression_tau0.5.tsv"),
         "--out-dir", str(out)],
    ]
    for argv in steps:
        assert main(argv) == 0, argv


def _snapshot(root: Path) -> dict[str, bytes]:
    return {str(p.relative_to(root)): p.read_bytes() for p in sorted(root.rglob("*")) if p.is_file()}


@pytest.mark.criterion(11, "end-to-end run on the bundled mini corpus")
def test_c11_end_to_end(mini_dir):
    work = Path(tempfile.mkdtemp())
    try:
        out = work / "run"
        start = time.perf_counter()
        _pipeline(mini_dir / "config.json", out)
        elapsed = time.perf_counter() - start
        first = _snapshot(out)
        shutil.rmtree(out)
        _pipeline(mini_dir / "config.json", out)
        second = _snapshot(out)
    finally:
        shutil.rmtree(work, ignore_errors=True)
    ranked = first["report.tsv"].decode().splitlines()
    filings = json.loads(first["extract.log.json"])["counts"]["filings"]
    ok = elapsed < 60.0 and first == second and len(ranked) > 1 and filings == 20
    report(11, ok, f"{elapsed:.1f}s, {len(first)} files identical: {first == second}")
    assert filings == 20
    assert len(ranked) > 1 and ranked[0].startswith("name\t")
    assert elapsed < 60.0
    assert first == second


@pytest.mark.criterion(12, "record and model round-trips on fuzzed inputs")
def test_c12_round_trips():
    counts = {"records": 0, "models": 0}

    @settings(max_examples=1000, deadline=None, database=None)
    @given(records())
    def record_round_trip(record):
        assert parse_record(serialize_record(record)) == record
        counts["records"] += 1

    @settings(max_examples=1000, deadline=None, database=None)
    @given(crf_models(), st.randoms(use_true_random=False))
    def model_round_trip(model, rnd):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "m.crf"
            save_model(model, path)
            back = load_model(path)
        assert back.labels == model.labels and back.attributes == model.attributes
        assert np.array_equal(back.weights, model.weights)
        assert back.templates == model.templates and back.meta == model.meta
        names = list(model.attributes) + ["unseen"]
        for _ in range(3):
            compiled = [rnd.sample(names, k=rnd.randint(0, len(names))) for _ in range(rnd.randint(1, 6))]
            assert back.decode(compiled) == model.decode(compiled)
        counts["models"] += 1

    record_round_trip()
    model_round_trip()
    ok = counts["records"] >= 1000 and counts["models"] >= 1000
    report(12, ok, f"{counts['records']} records, {counts['models']} models")
    assert counts["records"] >= 1000
    assert counts["models"] >= 1000
