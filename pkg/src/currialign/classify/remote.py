"""Chat-completion wire client for the two remote model roles.

The wire contract is a plain HTTP POST of
``{model, temperature, messages: [{role: "system"|"user", content}]}``
returning a JSON body with a single text completion.  A replay transport
serves canned responses from a directory, keyed by the request body hash, so
the remote path is testable fully offline.
"""

from __future__ import annotations

import hashlib
import json
import os
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Protocol

import httpx

from ..domain import KaLabelSet
from ..errors import EmptyResponseError, RequestTimeoutError, TransportError
from ..ingest import CourseDoc
from . import prompts
from .pipeline import ClassifiedTopic, parse_label_reply, parse_topic_list

ENV_MODEL_URL = "CURRIALIGN_MODEL_URL"
ENV_MODEL_KEY = "CURRIALIGN_MODEL_KEY"
ENV_MODEL_NAME = "CURRIALIGN_MODEL_NAME"

DEFAULT_MODEL_NAME = "classify-lm"


@dataclass(frozen=True)
class ModelServiceConfig:
    base_url: str
    model_name: str
    api_key: str = ""
    temperature: float = 0.0
    timeout: float = 30.0
    max_in_flight: int = 4

    def __post_init__(self):
        if self.timeout <= 0:
            raise ValueError("timeout must be positive")
        if self.max_in_flight < 1:
            raise ValueError("max_in_flight must be at least 1")

    @classmethod
    def from_env(cls, **overrides) -> "ModelServiceConfig":
        url = overrides.pop("base_url", None) or os.environ.get(ENV_MODEL_URL)
        if not url:
            raise TransportError(f"{ENV_MODEL_URL} is not configured")
        return cls(
            base_url=url,
            model_name=overrides.pop("model_name", None)
            or os.environ.get(ENV_MODEL_NAME, DEFAULT_MODEL_NAME),
            api_key=overrides.pop("api_key", None) or os.environ.get(ENV_MODEL_KEY, ""),
            **overrides,
        )


def build_request(config: ModelServiceConfig, system: str, user: str) -> dict:
    return {
        "model": config.model_name,
        "temperature": config.temperature,
        "messages": [
            {"role": "system", "content": system},
            {"role": "user", "content": user},
        ],
    }


def serialize_request(body: dict) -> str:
    """Canonical request serialization used for golden files and replay keys."""
    return json.dumps(body, ensure_ascii=False, indent=2, sort_keys=True) + "\n"


def request_hash(body: dict) -> str:
    compact = json.dumps(body, ensure_ascii=False, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(compact.encode("utf-8")).hexdigest()


def extract_completion_text(payload) -> str:
    """Pull the single completion string out of a service reply."""
    if isinstance(payload, dict):
        content = payload.get("content")
        if isinstance(content, str):
            return content
        choices = payload.get("choices")
        if isinstance(choices, list) and choices:
            message = choices[0].get("message", {})
            if isinstance(message.get("content"), str):
                return message["content"]
    raise TransportError("reply carries no completion text")


class Transport(Protocol):
    def complete(self, body: dict) -> str: ...


class HttpTransport:
    """POSTs request bodies to the model service, bounding concurrency."""

    def __init__(self, config: ModelServiceConfig):
        self._config = config
        self._semaphore = threading.BoundedSemaphore(config.max_in_flight)
        headers = {}
        if config.api_key:
            headers["Authorization"] = f"Bearer {config.api_key}"
        self._client = httpx.Client(timeout=config.timeout, headers=headers)

    def complete(self, body: dict) -> str:
        with self._semaphore:
            try:
                response = self._client.post(self._config.base_url, json=body)
            except httpx.TimeoutException as e:
                raise RequestTimeoutError(f"model service timed out after {self._config.timeout}s") from e
            except httpx.HTTPError as e:
                raise TransportError(f"model service unreachable: {e}") from e
        if response.status_code != 200:
            raise TransportError(f"model service returned {response.status_code}", status=response.status_code)
        try:
            payload = response.json()
        except ValueError as e:
            raise TransportError("model service returned non-JSON body") from e
        return extract_completion_text(payload)

    def close(self):
        self._client.close()


class ReplayTransport:
    """Serves canned responses recorded as <request-hash>.json files."""

    def __init__(self, directory: str | Path):
        self._dir = Path(directory)

    def complete(self, body: dict) -> str:
        path = self._dir / f"{request_hash(body)}.json"
        if not path.exists():
            raise TransportError(f"no canned response for request hash {request_hash(body)}")
        payload = json.loads(path.read_text(encoding="utf-8"))
        return extract_completion_text(payload)

    def store(self, body: dict, completion: str) -> Path:
        """Record a canned response for the given request body."""
        self._dir.mkdir(parents=True, exist_ok=True)
        path = self._dir / f"{request_hash(body)}.json"
        path.write_text(
            json.dumps({"content": completion}, ensure_ascii=False, indent=2) + "\n",
            encoding="utf-8",
        )
        return path


class RemoteModelClient:
    """High-level client for topic extraction and zero-shot classification."""

    backend_name = "remote"

    def __init__(self, config: ModelServiceConfig, transport: Transport | None = None):
        self.config = config
        self.transport = transport if transport is not None else HttpTransport(config)

    @property
    def max_concurrency(self) -> int:
        return self.config.max_in_flight

    def extract_topics(self, course: CourseDoc) -> list[str]:
        """Ask the preprocessing model for the course's subtopics."""
        if not course.description.strip():
            raise ValueError(f"course {course.id!r} has an empty description")
        body = build_request(
            self.config,
            prompts.PREPROCESS_SYSTEM_PROMPT,
            prompts.preprocess_user_message(course.title, course.description),
        )
        raw = self.transport.complete(body)
        if not raw.strip():
            raise EmptyResponseError("empty topic-extraction reply")
        return parse_topic_list(raw)

    def classify_zero_shot(self, text: str) -> KaLabelSet:
        """Ask the classification model for the text's Knowledge Areas."""
        if not text.strip():
            raise ValueError("cannot classify empty text")
        body = build_request(
            self.config,
            prompts.CLASSIFY_SYSTEM_PROMPT,
            prompts.classify_user_message(text),
        )
        raw = self.transport.complete(body)
        return parse_label_reply(raw)

    def classify_text(self, text: str) -> ClassifiedTopic:
        body = build_request(
            self.config,
            prompts.CLASSIFY_SYSTEM_PROMPT,
            prompts.classify_user_message(text),
        )
        raw = self.transport.complete(body)
        return ClassifiedTopic(text=text, labels=parse_label_reply(raw), backend="remote", raw_response=raw)


def extract_topics(course: CourseDoc, client: RemoteModelClient) -> list[str]:
    return client.extract_topics(course)


def classify_zero_shot(text: str, client: RemoteModelClient) -> KaLabelSet:
    return client.classify_zero_shot(text)
