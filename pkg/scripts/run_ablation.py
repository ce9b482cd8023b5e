"""Train and score every lettered feature set on one held-out split.

Defaults to the bundled mini corpus; pass --records and resource paths for other data.
"""

import argparse
import sys
import time
from pathlib import Path

from finopinion.crf import TrainConfig
from finopinion.evaluation import drop_target, phrase_prf, split_heldout
from finopinion.feature_sets import FEATURE_SETS, feature_config
from finopinion.features import FeatureResources
from finopinion.lingdata import read_records
from finopinion.tagging import tag_records, train_tagger

MINI = Path(__file__).resolve().parents[1] / "fixtures" / "mini"


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--records", default=str(MINI / "records.jsonl"))
    ap.add_argument("--subjectivity-lexicon", default=str(MINI / "subjectivity.tsv"))
    ap.add_argument("--verb-clusters", default=str(MINI / "verb_clusters.tsv"))
    ap.add_argument("--frames", default=str(MINI / "frames.tsv"))
    ap.add_argument("--sets", default="".join(FEATURE_SETS), help="letters to run, e.g. ABV")
    ap.add_argument("--train-fraction", type=float, default=0.7)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-iterations", type=int, default=100)
    args = ap.parse_args(argv)

    records = list(read_records(args.records))
    train_recs, test_recs = split_heldout(records, args.train_fraction, args.seed)
    res = FeatureResources.from_paths(args.subjectivity_lexicon, args.verb_clusters, args.frames)
    tc = TrainConfig(max_iterations=args.max_iterations, seed=args.seed)

    print("set\tF\tF_no_target\ttoken_acc\tseconds")
    for name in args.sets:
        fc = feature_config(name)
        start = time.perf_counter()
        model = train_tagger(train_recs, fc, tc, res)
        pred = tag_records(model, test_recs, res, fc)
        gold = drop_target(test_recs) if fc.drop_target else test_recs
        full = phrase_prf(gold, pred)
        no_target = phrase_prf(drop_target(gold), drop_target(pred))
        print(f"{name}\t{full.micro.F:.2f}\t{no_target.micro.F:.2f}\t{full.token_accuracy:.2f}\t"
              f"{time.perf_counter() - start:.1f}", flush=True)
    return 0


if __name__ == "__main__":
    sys.exit(main())
