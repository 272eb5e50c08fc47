"""Bundled mini-FOON corpus and its brute-force manifest."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from .manifest import CorpusTooLarge, generate_manifest, render_manifest


def corpus_path() -> Path:
    return Path(str(resources.files(__package__).joinpath("data")))


__all__ = ["CorpusTooLarge", "corpus_path", "generate_manifest", "render_manifest"]
