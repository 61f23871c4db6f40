"""In-memory implementation of corpus repository."""

from typing import Optional
from uuid import UUID

from overtune.models import StoredCorpus

from ..corpus_repository import CorpusRepository


class InMemoryCorpusRepository(CorpusRepository):
    """In-memory corpus storage using Python dict."""

    def __init__(self) -> None:
        self._corpora: dict[UUID, StoredCorpus] = {}

    async def store_corpus(self, corpus: StoredCorpus) -> None:
        self._corpora[corpus.id] = corpus

    async def get_corpus(self, corpus_id: UUID) -> Optional[StoredCorpus]:
        return self._corpora.get(corpus_id)

    async def list_corpora(self, limit: int = 100, offset: int = 0) -> list[StoredCorpus]:
        """
        List stored corpora with pagination.

        Returns:
            Corpora sorted by upload_time descending
        """
        ordered = sorted(self._corpora.values(), key=lambda c: c.upload_time, reverse=True)
        return ordered[offset : offset + limit]

    async def count_corpora(self) -> int:
        return len(self._corpora)
