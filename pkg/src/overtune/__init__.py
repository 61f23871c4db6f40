from overtune.main import main

__all__ = ["main"]
