"""Module entry point: ``python -m toricsh``."""

from toricsh.cli import app

if __name__ == "__main__":
    app()
