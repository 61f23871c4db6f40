"""Abstract interface for corpus repository."""

from abc import ABC, abstractmethod
from typing import Optional
from uuid import UUID

from overtune.models import StoredCorpus


class CorpusRepository(ABC):
    """Abstract interface for storing parsed corpora between requests."""

    @abstractmethod
    async def store_corpus(self, corpus: StoredCorpus) -> None:
        """
        Store a parsed corpus.

        Args:
            corpus: StoredCorpus entity to store
        """
        pass

    @abstractmethod
    async def get_corpus(self, corpus_id: UUID) -> Optional[StoredCorpus]:
        """
        Retrieve a corpus by its ID.

        Args:
            corpus_id: UUID of the corpus

        Returns:
            StoredCorpus if found, None otherwise
        """
        pass

    @abstractmethod
    async def list_corpora(self, limit: int = 100, offset: int = 0) -> list[StoredCorpus]:
        """
        List stored corpora with pagination, newest first.

        Args:
            limit: Maximum number of corpora to return
            offset: Number of corpora to skip
        """
        pass

    @abstractmethod
    async def count_corpora(self) -> int:
        pass
