from .inference import forward_backward, log_partition, sequence_score, viterbi
from .model import CorruptFile, CrfModel, VersionMismatch, load_model, save_model
from .templates import FeatureTemplate, UnknownAttribute, compile_features, default_templates
from .train import NonFiniteObjective, TrainConfig, loglik_and_gradient, train

__all__ = [
    "CorruptFile", "CrfModel", "FeatureTemplate", "NonFiniteObjective", "TrainConfig",
    "UnknownAttribute", "VersionMismatch", "compile_features", "default_templates",
    "forward_backward", "load_model", "log_partition", "loglik_and_gradient", "save_model",
    "sequence_score", "train", "viterbi",
]
