from .cli import typlab_cli_app
from .cli import main

__all__ = ["typlab_cli_app", "main"]
