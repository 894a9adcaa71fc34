from .app import create_app, load_tokens

__all__ = ["create_app", "load_tokens"]
