"""Concrete corpus repositories."""

from .in_memory_corpus_repository import InMemoryCorpusRepository

__all__ = ["InMemoryCorpusRepository"]
