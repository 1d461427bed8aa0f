from .config import ModelConfig, Transform
from .panel_csv import read_panel_csv, write_panel_csv

__all__ = [
    'ModelConfig', 'Transform', 'read_panel_csv', 'write_panel_csv',
]
