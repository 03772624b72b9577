from .runtime import Runtime
from .app import create_app

__all__ = ["Runtime", "create_app"]
