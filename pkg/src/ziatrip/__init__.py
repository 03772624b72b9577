"""Trip-planning assistant: catalog, ingestion, retrieval, dialogue, planner, LLM gateway and HTTP API."""

__version__ = "0.1.0"
