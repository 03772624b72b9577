from .embeddings import (EmbeddingVector, MockEmbeddingProvider, HttpEmbeddingProvider,
                         cosine_similarity)
from .index import IndexEntry, RetrievalHit, VectorIndex
from .prompting import augment_prompt

__all__ = [
    "EmbeddingVector", "MockEmbeddingProvider", "HttpEmbeddingProvider",
    "cosine_similarity", "IndexEntry", "RetrievalHit", "VectorIndex", "augment_prompt",
]
