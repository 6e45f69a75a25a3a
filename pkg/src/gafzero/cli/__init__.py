"""Typer CLI application."""

from .app import app

__all__ = ["app"]
