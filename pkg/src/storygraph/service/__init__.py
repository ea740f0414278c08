from .app import Service, create_app
from .persistence import Journal
from .state import Workspace

__all__ = ["Service", "create_app", "Journal", "Workspace"]
