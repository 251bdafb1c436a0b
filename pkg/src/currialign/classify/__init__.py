"""Topic extraction and Knowledge Area classification.

Two interchangeable backends: a remote chat-completion client (online, or
offline through the replay transport) and the native TF-IDF nearest-centroid
model trained on the labeled fine-tuning corpus.
"""

from .baseline import (
    DEFAULT_RELATIVE_THRESHOLD,
    BaselineClassifier,
    BaselineModel,
    classify_baseline,
    load_model,
    save_model,
    score_baseline,
    tokenize,
    train_baseline,
)
from .pipeline import (
    ClassifiedTopic,
    classify_batch,
    classify_batch_results,
    parse_label_reply,
    parse_topic_list,
    strip_kd_prefix,
)
from .remote import (
    ModelServiceConfig,
    RemoteModelClient,
    ReplayTransport,
    build_request,
    classify_zero_shot,
    extract_topics,
    request_hash,
    serialize_request,
)

__all__ = [
    "DEFAULT_RELATIVE_THRESHOLD",
    "BaselineClassifier",
    "BaselineModel",
    "ClassifiedTopic",
    "ModelServiceConfig",
    "RemoteModelClient",
    "ReplayTransport",
    "build_request",
    "classify_baseline",
    "classify_batch",
    "classify_batch_results",
    "classify_zero_shot",
    "extract_topics",
    "load_model",
    "parse_label_reply",
    "parse_topic_list",
    "request_hash",
    "save_model",
    "score_baseline",
    "serialize_request",
    "strip_kd_prefix",
    "tokenize",
    "train_baseline",
]
