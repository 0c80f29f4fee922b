from noonflow.runner.cli import main

__all__ = ['main']
