"""Metric processing pipeline."""

from overtune.processing.corpus_processor import CorpusProcessor

__all__ = ["CorpusProcessor"]
