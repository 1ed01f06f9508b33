"""Optional external text-generation client for counterfactual rewrites.

Configured by environment variables; absent configuration disables the
path cleanly and the explainer falls back to retrieval. Requests are
bounded by a semaphore and a per-request timeout.
"""

from __future__ import annotations

import os
import threading
from dataclasses import dataclass

import httpx

GENERATOR_URL_ENV = "CONVXAI_GENERATOR_URL"
GENERATOR_KEY_ENV = "CONVXAI_GENERATOR_KEY"


class GeneratorError(RuntimeError):
    pass


@dataclass(frozen=True)
class GeneratorConfig:
    base_url: str
    api_key: str | None = None
    timeout: float = 10.0
    max_length: int = 80
    max_in_flight: int = 4


class ExternalGenerator:
    def __init__(self, config: GeneratorConfig, transport: httpx.BaseTransport | None = None):
        self.config = config
        self._semaphore = threading.BoundedSemaphore(config.max_in_flight)
        headers = {}
        if config.api_key:
            headers["Authorization"] = f"Bearer {config.api_key}"
        self._client = httpx.Client(
            headers=headers, timeout=config.timeout, transport=transport
        )

    def complete(self, prompt: str) -> str:
        """POST the prompt; returns the completion text or raises GeneratorError."""
        with self._semaphore:
            try:
                response = self._client.post(
                    self.config.base_url,
                    json={"prompt": prompt, "max_length": self.config.max_length},
                )
                response.raise_for_status()
                completion = response.json().get("completion")
            except (httpx.HTTPError, ValueError) as exc:
                raise GeneratorError(str(exc)) from exc
        if not isinstance(completion, str) or not completion.strip():
            raise GeneratorError("generator returned no completion text")
        return completion.strip()

    def close(self) -> None:
        self._client.close()


def generator_from_env() -> ExternalGenerator | None:
    url = os.environ.get(GENERATOR_URL_ENV)
    if not url:
        return None
    return ExternalGenerator(GeneratorConfig(base_url=url, api_key=os.environ.get(GENERATOR_KEY_ENV)))
