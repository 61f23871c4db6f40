"""Corpus storage for the HTTP service."""

from overtune.store.corpus_repository import CorpusRepository
from overtune.store.impl import InMemoryCorpusRepository

__all__ = ["CorpusRepository", "InMemoryCorpusRepository"]
