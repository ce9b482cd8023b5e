import os
import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).resolve().parent))

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", deadline=None, max_examples=1000,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

ROOT = Path(__file__).resolve().parents[1]
MINI = ROOT / "fixtures" / "mini"

# the sentence and tree used throughout the feature tests
FIG_TOKENS = ("We", "decided", "to", "make", "some", "bold", "decisions")
FIG_TREE = (
    "(S (NP (PRP We)) (VP (VBD decided) (S (VP (TO to) (VP (VB make) "
    "(NP (DT some) (JJ bold) (NNS decisions)))))))"
)


@pytest.fixture
def fig_record():
    from finopinion.lingdata import SentenceRecord, SrlFrame

    return SentenceRecord(
        tokens=FIG_TOKENS,
        lemmas=("we", "decide", "to", "make", "some", "bold", "decision"),
        pos=("PRP", "VBD", "TO", "VB", "DT", "JJ", "NNS"),
        chunks=("B-NP", "B-VP", "I-VP", "I-VP", "B-NP", "I-NP", "I-NP"),
        ner=("O",) * 7,
        parse=FIG_TREE,
        deps=((1, 0, "nsubj"), (-1, 1, "root"), (3, 2, "aux"), (1, 3, "xcomp"), (6, 4, "det"),
              (6, 5, "amod"), (3, 6, "dobj")),
        srl=(SrlFrame(1, "active", (("A0", 0, 1), ("A1", 2, 7))),),
        verb_cluster=("none", "c12", "none", "c40", "none", "none", "none"),
        frame=("none", "Deciding", "none", "Causation", "none", "none", "none"),
        labels=("B-agent", "B-direct-subjective", "B-expressive-subjectivity", "I-expressive-subjectivity",
                "I-expressive-subjectivity", "I-expressive-subjectivity", "I-expressive-subjectivity"),
        id="fig", doc_id="d0",
    )


@pytest.fixture(scope="session")
def mini_dir():
    if not (MINI / "config.json").exists():
        from finopinion.synthetic import write_mini_bundle

        write_mini_bundle(MINI)
    return MINI


# --- acceptance summary ------------------------------------------------------------

_CRITERIA: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number and title")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    n, title = marker.args
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        status = "PASS" if report.passed else "FAIL"
        if _CRITERIA.get(n, ("", "PASS"))[1] != "FAIL":
            _CRITERIA[n] = (title, status)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        title, status = _CRITERIA[n]
        terminalreporter.write_line(f"criterion {n:>2}: {status}  {title}")
