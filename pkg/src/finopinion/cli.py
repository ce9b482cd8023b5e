"""Command-line pipeline: extract, featurize, train, tag, eval, harvest, weight, sue, regress, rank, analyze, report.

Settings come from an optional JSON config file (paths relative to the file)
and are overridden by flags. Every invocation writes ``<out>/<command>.log.json``
with the resolved settings, their hash, the seed and digests of the inputs.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import logging
import sys
from dataclasses import asdict
from pathlib import Path
from typing import Any

import numpy as np

from . import __version__
from .crf import TrainConfig, load_model, save_model
from .econ import (
    CONTROLS, Separation, design_matrix, fit_mlogit, merge_firm_years, rank_fit, rank_mwe, read_earnings,
)
from .econ.panel import firm_sue
from .econ.sue import categorize
from .evaluation import drop_target, phrase_prf, select_explicit, split_heldout
from .feature_sets import feature_config
from .features import FeatureResources, assemble_attributes
from .lingdata import OPINION_CLASSES, SentenceRecord, read_records, write_records
from .mwe import (
    MwefIdfConfig, frequent_phrases, harvest, load_allow_list, mask_entities, read_mwe_table,
    read_weight_matrix, sidecar_path, weight_matrix, write_mwe_table, write_weight_matrix,
)
from .tagging import FeatureSetMismatch, tag_records, train_tagger
from .textprep import CandidateSentence, EmptyDocument, ExtractCounts, extract_filing, load_filing, load_lexicon, tokenize

log = logging.getLogger("finopinion")

PATH_KEYS = {
    "corpus_dir", "lexicons", "subjectivity_lexicon", "verb_clusters", "frames", "records", "earnings",
    "polarity", "allow_list", "model", "out_dir", "gold", "pred", "sentences", "tagged", "mwe_table", "weights",
    "input", "regression",
}


class CliError(Exception):
    pass


# --- settings ------------------------------------------------------------------

def load_config(path: str | None) -> dict[str, Any]:
    if path is None:
        return {}
    p = Path(path)
    if not p.is_file():
        raise CliError(f"config file not found: {path}")
    try:
        cfg = json.loads(p.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise CliError(f"config file {path} is not valid JSON: {exc}") from exc
    base = p.resolve().parent

    def resolve(v):
        if isinstance(v, list):
            return [resolve(x) for x in v]
        return str((base / v).resolve()) if isinstance(v, str) else v

    return {k: resolve(v) if k in PATH_KEYS else v for k, v in cfg.items()}


def settings(args: argparse.Namespace, keys: dict[str, Any]) -> dict[str, Any]:
    """Flag value if given, else config value, else the default in ``keys``."""
    cfg = load_config(args.config)
    out = {}
    for key, default in keys.items():
        flag = getattr(args, key, None)
        if key == "train":
            continue
        if flag is not None:
            out[key] = flag
        elif key in cfg:
            out[key] = cfg[key]
        else:
            out[key] = default
    if "train" in keys:
        train = dict(cfg.get("train", {}))
        for k in ("max_iterations", "gaussian_variance", "order", "tolerance"):
            if getattr(args, k, None) is not None:
                train[k] = getattr(args, k)
        if "seed" in out and out["seed"] is not None:
            train["seed"] = out["seed"]
        out["train"] = train
    return out


def _digest(path) -> str:
    p = Path(path)
    h = hashlib.sha256()
    if p.is_dir():
        for f in sorted(p.rglob("*")):
            if f.is_file():
                h.update(f.relative_to(p).as_posix().encode())
                h.update(f.read_bytes())
    elif p.is_file():
        h.update(p.read_bytes())
    else:
        return "missing"
    return h.hexdigest()


class RunLog:
    def __init__(self, command: str, conf: dict[str, Any], out_dir: Path):
        self.command = command
        self.conf = conf
        self.out_dir = out_dir
        self.inputs: dict[str, str] = {}
        self.outputs: list[str] = []
        self.counts: dict[str, Any] = {}

    def input(self, *paths) -> None:
        for p in paths:
            if p is not None:
                self.inputs[Path(p).name] = _digest(p)

    def output(self, path) -> Path:
        self.outputs.append(Path(path).name)
        return Path(path)

    def write(self) -> Path:
        blob = json.dumps(self.conf, sort_keys=True, default=str)
        record = {
            "command": self.command,
            "version": __version__,
            "config": self.conf,
            "config_hash": hashlib.sha256(blob.encode()).hexdigest(),
            "seed": self.conf.get("seed"),
            "inputs": self.inputs,
            "outputs": self.outputs,
            "counts": self.counts,
        }
        path = self.out_dir / f"{self.command}.log.json"
        path.write_text(json.dumps(record, indent=2, sort_keys=True, default=str) + "\n", encoding="utf-8")
        return path


def _out_dir(conf) -> Path:
    out = Path(conf.get("out_dir") or ".")
    out.mkdir(parents=True, exist_ok=True)
    return out


def _require(conf, *keys):
    for k in keys:
        if conf.get(k) in (None, "", []):
            raise CliError(f"missing setting {k!r} (flag --{k.replace('_', '-')} or config key)")


def _records(path) -> list[SentenceRecord]:
    if not Path(path).is_file():
        raise CliError(f"record file not found: {path}")
    return list(read_records(path))


def _resources(conf) -> FeatureResources:
    return FeatureResources.from_paths(
        lexicon=conf.get("subjectivity_lexicon"), verb_clusters=conf.get("verb_clusters"), frames=conf.get("frames"),
    )


def _write_tsv(path, rows) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        csv.writer(fh, delimiter="\t", lineterminator="\n").writerows(rows)


def _read_tsv(path) -> list[dict[str, str]]:
    with open(path, encoding="utf-8", newline="") as fh:
        return list(csv.DictReader(fh, delimiter="\t"))


# --- subcommands ---------------------------------------------------------------

def cmd_extract(args) -> int:
    conf = settings(args, {"corpus_dir": None, "lexicons": [], "min_tokens": 8, "max_tokens": 100,
                           "max_nonalpha_ratio": 0.5, "min_alpha": 3, "year_range": None, "out_dir": "."})
    _require(conf, "corpus_dir", "lexicons")
    corpus = Path(conf["corpus_dir"])
    if not corpus.is_dir():
        raise CliError(f"corpus directory not found: {corpus}")
    out = _out_dir(conf)
    runlog = RunLog("extract", conf, out)
    runlog.input(corpus, *conf["lexicons"])
    lexicon = load_lexicon(*conf["lexicons"])
    year_range = tuple(conf["year_range"]) if conf["year_range"] else None
    counts = ExtractCounts()
    lines, records = [], []
    for path in sorted(corpus.glob("*.htm*")):
        filing = load_filing(path, year_range)
        counts.filings += 1
        try:
            sentences, candidates = extract_filing(
                filing, lexicon, conf["min_tokens"], conf["max_tokens"], conf["max_nonalpha_ratio"], conf["min_alpha"],
            )
        except EmptyDocument:
            counts.empty += 1
            continue
        counts.sentences += len(sentences)
        counts.candidates += len(candidates)
        for c in candidates:
            lines.append(c.to_line())
            records.append(_candidate_record(c))
    with open(runlog.output(out / "sentences.txt"), "w", encoding="utf-8") as fh:
        fh.writelines(line + "\n" for line in lines)
    write_records(runlog.output(out / "candidates.jsonl"), records)
    runlog.counts = asdict(counts)
    runlog.write()
    log.info("extract: %s", asdict(counts))
    return 0


def _candidate_record(c: CandidateSentence) -> SentenceRecord:
    cid, year, idx = c.source
    return SentenceRecord(tokens=tuple(tokenize(c.text)), id=f"{cid}_{year}_{idx}", doc_id=f"{cid}_{year}")


def cmd_featurize(args) -> int:
    conf = settings(args, {"records": None, "feature_set": "W", "subjectivity_lexicon": None, "verb_clusters": None,
                           "frames": None, "out_dir": "."})
    _require(conf, "records")
    out = _out_dir(conf)
    runlog = RunLog("featurize", conf, out)
    runlog.input(conf["records"])
    fc = feature_config(conf["feature_set"])
    res = _resources(conf)
    n = 0
    with open(runlog.output(out / "attributes.jsonl"), "w", encoding="utf-8") as fh:
        for r in _records(conf["records"]):
            m = assemble_attributes(r, fc, res)
            fh.write(json.dumps({"id": r.id, "names": m.names, "rows": m.rows}, ensure_ascii=False) + "\n")
            n += 1
    runlog.counts = {"records": n}
    runlog.write()
    return 0


def cmd_train(args) -> int:
    conf = settings(args, {"records": None, "feature_set": "W", "subjectivity_lexicon": None, "verb_clusters": None,
                           "frames": None, "heldout": None, "seed": 0, "model": None, "out_dir": ".", "train": {}})
    _require(conf, "records")
    out = _out_dir(conf)
    runlog = RunLog("train", conf, out)
    runlog.input(conf["records"])
    records = _records(conf["records"])
    if conf["heldout"]:
        train_recs, test_recs = split_heldout(records, float(conf["heldout"]), int(conf["seed"] or 0))
        write_records(runlog.output(out / "heldout_train.jsonl"), train_recs)
        write_records(runlog.output(out / "heldout_test.jsonl"), test_recs)
    else:
        train_recs, test_recs = records, []
    tc = TrainConfig(**conf["train"])
    fc = feature_config(conf["feature_set"])
    model = train_tagger(train_recs, fc, tc, _resources(conf))
    model_path = Path(conf["model"]) if conf["model"] else out / "model.crf"
    save_model(model, runlog.output(model_path))
    runlog.counts = {"train": len(train_recs), "test": len(test_recs), "iterations": model.meta["iterations"],
                     "stop_reason": model.meta["stop_reason"], "attributes": len(model.attributes)}
    runlog.write()
    log.info("train: %s", runlog.counts)
    return 0


def cmd_tag(args) -> int:
    conf = settings(args, {"records": None, "model": None, "feature_set": None, "subjectivity_lexicon": None,
                           "verb_clusters": None, "frames": None, "out_dir": "."})
    _require(conf, "records", "model")
    out = _out_dir(conf)
    runlog = RunLog("tag", conf, out)
    runlog.input(conf["records"], conf["model"])
    model = load_model(conf["model"])
    fc = feature_config(conf["feature_set"]) if conf["feature_set"] else None
    tagged = tag_records(model, _records(conf["records"]), _resources(conf), fc)
    write_records(runlog.output(out / "tagged.jsonl"), tagged)
    runlog.counts = {"records": len(tagged), "spans": sum(len(r.spans()) for r in tagged)}
    runlog.write()
    return 0


def cmd_eval(args) -> int:
    conf = settings(args, {"gold": None, "pred": None, "model": None, "feature_set": None, "explicit": False,
                           "subjectivity_lexicon": None, "verb_clusters": None, "frames": None, "out_dir": "."})
    _require(conf, "gold")
    out = _out_dir(conf)
    runlog = RunLog("eval", conf, out)
    gold = _records(conf["gold"])
    runlog.input(conf["gold"])
    if conf["pred"]:
        pred = _records(conf["pred"])
        runlog.input(conf["pred"])
    elif conf["model"]:
        model = load_model(conf["model"])
        runlog.input(conf["model"])
        fc = feature_config(conf["feature_set"]) if conf["feature_set"] else None
        pred = tag_records(model, gold, _resources(conf), fc)
    else:
        raise CliError("eval needs --pred or --model")
    if len(pred) != len(gold):
        raise CliError(f"{len(gold)} gold records but {len(pred)} predictions")
    variants = {"all": (gold, pred), "no_target": (drop_target(gold), drop_target(pred))}
    if conf["explicit"]:
        keep = {id(r) for r in select_explicit(gold)}
        idx = [i for i, r in enumerate(gold) if id(r) in keep]
        variants["explicit"] = ([gold[i] for i in idx], [pred[i] for i in idx])
        variants["explicit_no_target"] = (drop_target(variants["explicit"][0]), drop_target(variants["explicit"][1]))
    summary = {}
    for name, (g, p) in variants.items():
        if not g:
            summary[name] = None
            continue
        report = phrase_prf(g, p)
        (runlog.output(out / f"eval_{name}.tsv")).write_text(report.to_tsv(), encoding="utf-8")
        (runlog.output(out / f"eval_{name}.json")).write_text(report.dumps() + "\n", encoding="utf-8")
        summary[name] = {"F": report.micro.F, "token_accuracy": report.token_accuracy, "sentences": len(g)}
    runlog.counts = summary
    runlog.write()
    return 0


def _tagged_corpus(conf) -> list[SentenceRecord]:
    records = _records(conf["tagged"])
    if conf.get("mask", True):
        records = [mask_entities(r) if r.ner is not None else r for r in records]
    return records


def cmd_harvest(args) -> int:
    conf = settings(args, {"tagged": None, "mwe_class": None, "mask": True, "top": 8, "out_dir": "."})
    _require(conf, "tagged")
    out = _out_dir(conf)
    runlog = RunLog("harvest", conf, out)
    runlog.input(conf["tagged"])
    entries = harvest(_tagged_corpus(conf), conf["mwe_class"])
    write_mwe_table(runlog.output(out / "mwe_table.tsv"), entries)
    runlog.output(sidecar_path(out / "mwe_table.tsv"))
    _write_tsv(runlog.output(out / "frequent.tsv"),
               [["expression", "freq"], *frequent_phrases(entries, conf["top"])])
    runlog.counts = {"entries": len(entries), "occurrences": sum(e.total_freq for e in entries)}
    runlog.write()
    return 0


def _select(entries, conf) -> list[str]:
    if conf.get("allow_list"):
        return load_allow_list(conf["allow_list"])
    cls = conf.get("mwe_class")
    pool = [e for e in entries if cls is None or e.label == cls]
    chosen: list[str] = []
    for text, _ in frequent_phrases(pool):
        if len(chosen) >= int(conf.get("top_k") or 0):
            break
        chosen.append(text)
    return chosen


def _documents(conf, entries) -> list[str]:
    if conf.get("documents"):
        return sorted(set(conf["documents"]))
    if conf.get("tagged"):
        return sorted({r.doc_id or "" for r in _records(conf["tagged"])})
    return sorted({d for e in entries for d in e.per_doc_freq})


def cmd_weight(args) -> int:
    conf = settings(args, {"mwe_table": None, "tagged": None, "allow_list": None, "top_k": 10, "mwe_class": None,
                           "q": 20.0, "l": 40.0, "out_dir": "."})
    _require(conf, "mwe_table")
    out = _out_dir(conf)
    runlog = RunLog("weight", conf, out)
    runlog.input(conf["mwe_table"], sidecar_path(conf["mwe_table"]), conf["tagged"], conf["allow_list"])
    entries = read_mwe_table(conf["mwe_table"])
    selected = _select(entries, conf)
    docs = _documents(conf, entries)
    W = weight_matrix(entries, docs, selected, MwefIdfConfig(conf["q"], conf["l"]))
    write_weight_matrix(runlog.output(out / "weights.tsv"), docs, selected, W)
    runlog.counts = {"documents": len(docs), "selected": len(selected)}
    runlog.write()
    return 0


def cmd_sue(args) -> int:
    conf = settings(args, {"earnings": None, "tau": 0.5, "out_dir": "."})
    _require(conf, "earnings")
    out = _out_dir(conf)
    runlog = RunLog("sue", conf, out)
    runlog.input(conf["earnings"])
    taus = _taus(conf["tau"])
    sue = firm_sue(read_earnings(conf["earnings"]))
    rows = [["company_id", "fiscal_year", "sue", *(f"y_tau{t:g}" for t in taus)]]
    for (cid, year), s in sorted(sue.items()):
        rows.append([cid, year, f"{s:.10g}", *(categorize(s, t) for t in taus)])
    _write_tsv(runlog.output(out / "sue.tsv"), rows)
    runlog.counts = {"firm_years": len(sue)}
    runlog.write()
    return 0


def _taus(value) -> list[float]:
    if isinstance(value, (int, float)):
        return [float(value)]
    return [float(v) for v in value]


def _regress(conf, docs, names, W, selected, runlog, out, tau, suffix="") -> dict:
    earnings = read_earnings(conf["earnings"])
    keys = []
    for d in docs:
        cid, _, year = d.rpartition("_")
        if cid and year.isdigit():
            keys.append((cid, int(year)))
    controls = list(conf.get("controls") or CONTROLS)
    panel, merge = merge_firm_years(keys, earnings, tau, controls)
    design = design_matrix(panel, docs, W, names, selected, controls)
    counts = {int(c): int(np.sum(design.y == c)) for c in (-1, 0, 1)}
    info = {"tau": tau, "merge": merge.to_json(), "categories": counts, "columns": list(design.columns),
            "equation_columns": {"coef_neg": "Y=-1 vs 0", "coef_pos": "Y=+1 vs 0"}}
    try:
        fit = fit_mlogit(design.X, design.y, design.columns, robust=bool(conf.get("robust", True)))
    except Separation as exc:
        raise CliError(f"tau={tau:g}: {exc} (column {exc.column})") from exc
    flavor = "robust" if conf.get("robust", True) else "model"
    results = rank_fit(fit, float(conf.get("sig_level", 0.05)), flavor)
    polarity = _polarity(conf.get("polarity"))
    rows = [["name", "coef_neg", "p_neg", "coef_pos", "p_pos", "R(w)"] + (["polarity"] if polarity is not None else [])]
    for r in results:
        row = [r.name, f"{r.coef_neg:.6g}", f"{r.p_neg:.6g}", f"{r.coef_pos:.6g}", f"{r.p_pos:.6g}",
               "-" if r.name == "const" else r.rank]
        if polarity is not None:
            row.append(polarity.get(r.name, ""))
        rows.append(row)
    _write_tsv(runlog.output(out / f"regression{suffix}.tsv"), rows)
    info.update({"loglik": fit.loglik, "iterations": fit.iterations, "grad_max": fit.grad_max,
                 "covariance": flavor, "nobs": fit.nobs})
    (runlog.output(out / f"regression{suffix}.json")).write_text(
        json.dumps(info, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return info


def _polarity(path) -> dict[str, str] | None:
    if not path:
        return None
    out = {}
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        parts = line.split("\t")
        if len(parts) >= 2 and not parts[0].startswith("#"):
            out[parts[0].strip().lower()] = parts[1].strip()
    return out


def cmd_regress(args) -> int:
    conf = settings(args, {"earnings": None, "weights": None, "allow_list": None, "controls": None, "tau": 0.5,
                           "sig_level": 0.05, "robust": True, "polarity": None, "out_dir": "."})
    _require(conf, "earnings", "weights")
    out = _out_dir(conf)
    runlog = RunLog("regress", conf, out)
    runlog.input(conf["earnings"], conf["weights"], conf["allow_list"])
    docs, names, W = read_weight_matrix(conf["weights"])
    selected = load_allow_list(conf["allow_list"]) if conf["allow_list"] else names
    taus = _taus(conf["tau"])
    runlog.counts = {}
    for t in taus:
        suffix = f"_tau{t:g}" if len(taus) > 1 else ""
        runlog.counts[f"tau{t:g}"] = _regress(conf, docs, names, W, selected, runlog, out, t, suffix)["categories"]
    runlog.write()
    return 0


def cmd_rank(args) -> int:
    conf = settings(args, {"input": None, "sig_level": 0.05, "out_dir": "."})
    _require(conf, "input")
    out = _out_dir(conf)
    runlog = RunLog("rank", conf, out)
    runlog.input(conf["input"])
    rows = [["name", "coef_neg", "p_neg", "coef_pos", "p_pos", "R(w)"]]
    for r in _read_tsv(conf["input"]):
        rank = rank_mwe(float(r["coef_neg"]), float(r["p_neg"]), float(r["coef_pos"]), float(r["p_pos"]),
                        float(conf["sig_level"]))
        rows.append([r["name"], r["coef_neg"], r["p_neg"], r["coef_pos"], r["p_pos"], rank])
    _write_tsv(runlog.output(out / "ranks.tsv"), rows)
    runlog.counts = {"rows": len(rows) - 1}
    runlog.write()
    return 0


def cmd_analyze(args) -> int:
    conf = settings(args, {"tagged": None, "earnings": None, "allow_list": None, "top_k": 10,
                           "mwe_class": OPINION_CLASSES[2], "mask": True, "q": 20.0, "l": 40.0, "controls": None,
                           "tau": 0.5, "sig_level": 0.05, "robust": True, "polarity": None, "seed": 0,
                           "out_dir": "."})
    _require(conf, "tagged", "earnings")
    out = _out_dir(conf)
    runlog = RunLog("analyze", conf, out)
    runlog.input(conf["tagged"], conf["earnings"], conf["allow_list"], conf["polarity"])
    records = _tagged_corpus(conf)
    entries = harvest(records)
    write_mwe_table(runlog.output(out / "mwe_table.tsv"), entries)
    runlog.output(sidecar_path(out / "mwe_table.tsv"))
    _write_tsv(runlog.output(out / "frequent.tsv"), [["expression", "freq"], *frequent_phrases(entries, 8)])
    selected = _select(entries, conf)
    docs = sorted({r.doc_id or "" for r in records})
    W = weight_matrix(entries, docs, selected, MwefIdfConfig(conf["q"], conf["l"]))
    write_weight_matrix(runlog.output(out / "weights.tsv"), docs, selected, W)
    runlog.counts = {"records": len(records), "documents": len(docs), "selected": selected}
    taus = _taus(conf["tau"])
    for t in taus:
        suffix = f"_tau{t:g}"
        info = _regress(conf, docs, selected, W, selected, runlog, out, t, suffix)
        runlog.counts[f"tau{t:g}"] = info["categories"]
    runlog.write()
    log.info("analyze: %s", runlog.counts)
    return 0


def cmd_report(args) -> int:
    conf = settings(args, {"regression": None, "polarity": None, "out_dir": "."})
    _require(conf, "regression")
    out = _out_dir(conf)
    runlog = RunLog("report", conf, out)
    runlog.input(conf["regression"], conf["polarity"])
    polarity = _polarity(conf["polarity"]) or {}
    rows = _read_tsv(conf["regression"])
    table = [["name", "polarity", "R(w)", "coef_neg", "p_neg", "coef_pos", "p_pos"]]
    tally: dict[str, int] = {}
    order = {r: i for i, r in enumerate(("1st", "2nd", "3rd", "4th", "5th", "-"))}
    for r in sorted(rows, key=lambda r: (order.get(r["R(w)"], 9), r["name"])):
        table.append([r["name"], r.get("polarity") or polarity.get(r["name"], ""), r["R(w)"],
                      r["coef_neg"], r["p_neg"], r["coef_pos"], r["p_pos"]])
        tally[r["R(w)"]] = tally.get(r["R(w)"], 0) + 1
    _write_tsv(runlog.output(out / "report.tsv"), table)
    runlog.counts = dict(sorted(tally.items()))
    runlog.write()
    return 0


# --- argument parsing ----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="finopinion", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(func=func)
        p.add_argument("--config", help="JSON config file; flags override its values")
        p.add_argument("--out-dir", dest="out_dir")
        return p

    def features(p):
        p.add_argument("--feature-set", dest="feature_set", help="set letter A-W or comma list of families")
        p.add_argument("--subjectivity-lexicon", dest="subjectivity_lexicon")
        p.add_argument("--verb-clusters", dest="verb_clusters")
        p.add_argument("--frames")

    p = add("extract", cmd_extract, "HTML filings -> candidate sentences")
    p.add_argument("--corpus-dir", dest="corpus_dir")
    p.add_argument("--lexicon", dest="lexicons", action="append")
    p.add_argument("--min-tokens", dest="min_tokens", type=int)
    p.add_argument("--max-tokens", dest="max_tokens", type=int)
    p.add_argument("--max-nonalpha-ratio", dest="max_nonalpha_ratio", type=float)
    p.add_argument("--min-alpha", dest="min_alpha", type=int)
    p.add_argument("--year-range", dest="year_range", type=int, nargs=2)

    p = add("featurize", cmd_featurize, "records -> attribute matrices")
    p.add_argument("--records")
    features(p)

    p = add("train", cmd_train, "train a CRF tagger")
    p.add_argument("--records")
    p.add_argument("--model", help="output model path (default <out>/model.crf)")
    p.add_argument("--heldout", type=float, help="train fraction of a seeded held-out split")
    p.add_argument("--seed", type=int)
    p.add_argument("--order", type=int, choices=(1, 2))
    p.add_argument("--max-iterations", dest="max_iterations", type=int)
    p.add_argument("--gaussian-variance", dest="gaussian_variance", type=float)
    p.add_argument("--tolerance", type=float)
    features(p)

    p = add("tag", cmd_tag, "decode records with a trained model")
    p.add_argument("--records")
    p.add_argument("--model")
    features(p)

    p = add("eval", cmd_eval, "phrase and token scores against gold records")
    p.add_argument("--gold")
    p.add_argument("--pred")
    p.add_argument("--model")
    p.add_argument("--explicit", action="store_true", default=None)
    features(p)

    p = add("harvest", cmd_harvest, "collect tagged expressions")
    p.add_argument("--tagged")
    p.add_argument("--mwe-class", dest="mwe_class")
    p.add_argument("--no-mask", dest="mask", action="store_false", default=None)
    p.add_argument("--top", type=int)

    p = add("weight", cmd_weight, "expression weights per document")
    p.add_argument("--mwe-table", dest="mwe_table")
    p.add_argument("--tagged", help="tagged records; their documents define the collection")
    p.add_argument("--allow-list", dest="allow_list")
    p.add_argument("--top-k", dest="top_k", type=int)
    p.add_argument("--mwe-class", dest="mwe_class")
    p.add_argument("--q", type=float)
    p.add_argument("--l", type=float)

    p = add("sue", cmd_sue, "standardized unexpected earnings and outcomes")
    p.add_argument("--earnings")
    p.add_argument("--tau", type=float, nargs="+")

    p = add("regress", cmd_regress, "multinomial logit of outcomes on controls and weights")
    p.add_argument("--earnings")
    p.add_argument("--weights")
    p.add_argument("--allow-list", dest="allow_list")
    p.add_argument("--controls", nargs="*")
    p.add_argument("--tau", type=float, nargs="+")
    p.add_argument("--sig-level", dest="sig_level", type=float)
    p.add_argument("--no-robust", dest="robust", action="store_false", default=None)
    p.add_argument("--polarity")

    p = add("rank", cmd_rank, "ranks from a table of coefficients and p-values")
    p.add_argument("--input")
    p.add_argument("--sig-level", dest="sig_level", type=float)

    p = add("analyze", cmd_analyze, "tagged records + earnings -> ranked expressions")
    p.add_argument("--tagged")
    p.add_argument("--earnings")
    p.add_argument("--allow-list", dest="allow_list")
    p.add_argument("--top-k", dest="top_k", type=int)
    p.add_argument("--mwe-class", dest="mwe_class")
    p.add_argument("--no-mask", dest="mask", action="store_false", default=None)
    p.add_argument("--controls", nargs="*")
    p.add_argument("--tau", type=float, nargs="+")
    p.add_argument("--sig-level", dest="sig_level", type=float)
    p.add_argument("--no-robust", dest="robust", action="store_false", default=None)
    p.add_argument("--polarity")
    p.add_argument("--q", type=float)
    p.add_argument("--l", type=float)
    p.add_argument("--seed", type=int)

    p = add("report", cmd_report, "ranked table with polarity annotations")
    p.add_argument("--regression")
    p.add_argument("--polarity")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (CliError, FeatureSetMismatch, FileNotFoundError, KeyError, ValueError) as exc:
        print(f"finopinion {args.command}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
