"""Records in, trained model or predicted labels out."""

from __future__ import annotations

from typing import Sequence

from .crf import CrfModel, FeatureTemplate, TrainConfig, compile_features, default_templates, train
from .evaluation import drop_target
from .features import AttributeMatrix, FeatureConfig, FeatureResources, assemble_attributes
from .lingdata import SentenceRecord, repair_iob


class FeatureSetMismatch(ValueError):
    pass


def compile_record(
    record: SentenceRecord,
    config: FeatureConfig,
    resources: FeatureResources | None,
    templates: Sequence[FeatureTemplate],
) -> list[list[str]]:
    matrix: AttributeMatrix = assemble_attributes(record, config, resources)
    return compile_features(matrix, templates, window=None)


def train_tagger(
    records: Sequence[SentenceRecord],
    config: FeatureConfig,
    train_config: TrainConfig = TrainConfig(),
    resources: FeatureResources | None = None,
    templates: Sequence[FeatureTemplate] | None = None,
) -> CrfModel:
    templates = list(templates) if templates is not None else default_templates()
    if config.drop_target:
        records = drop_target(records)
    examples = []
    for r in records:
        if r.labels is None:
            raise ValueError(f"record {r.id!r} has no gold labels")
        examples.append((compile_record(r, config, resources, templates), r.labels))
    return train(examples, train_config, templates, feature_config=config.to_json())


def check_feature_config(model: CrfModel, config: FeatureConfig | None) -> FeatureConfig:
    """The model's own feature config, or an error if ``config`` disagrees with it."""
    if model.feature_config is None:
        raise FeatureSetMismatch("model does not record its feature set")
    stored = FeatureConfig.from_json(model.feature_config)
    if config is not None and (config.families != stored.families or config.drop_target != stored.drop_target):
        raise FeatureSetMismatch(
            f"model was trained with feature set {stored.name} ({sorted(stored.families)}), "
            f"not {config.name} ({sorted(config.families)})"
        )
    return stored


def tag_records(
    model: CrfModel,
    records: Sequence[SentenceRecord],
    resources: FeatureResources | None = None,
    config: FeatureConfig | None = None,
) -> list[SentenceRecord]:
    config = check_feature_config(model, config)
    out = []
    for r in records:
        tags = model.decode(compile_record(r, config, resources, model.templates))
        out.append(r.with_labels(repair_iob(tags)))
    return out
