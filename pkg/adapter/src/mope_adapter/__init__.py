"""Caption-to-artifact adapter: text in, PENMAN and CoNLL-U files out."""
from .coref import resolve_coreference
from .pipeline import BatchResult, batch, process_caption, to_conllu, to_penman

__version__ = "0.1.0"

__all__ = [
    "BatchResult",
    "batch",
    "process_caption",
    "resolve_coreference",
    "to_conllu",
    "to_penman",
    "__version__",
]
