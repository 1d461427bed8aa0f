from .assignment import (
    assign_groups,
    best_groups,
    canonicalize_labels,
    random_assignment,
)
from .em import em_fit, em_iterate
from .option import EmOption, resolve_threads
from .trace import EmTrace

__all__ = [
    'EmOption', 'EmTrace', 'resolve_threads',
    'random_assignment', 'best_groups', 'assign_groups', 'canonicalize_labels',
    'em_fit', 'em_iterate',
]
