from ._version import __version__
from .study import Study

__all__ = ['Study', '__version__']
