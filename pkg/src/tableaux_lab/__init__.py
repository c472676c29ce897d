"""Random words, Young tableau shapes, and their random-matrix limits."""

from .combinat import AlphabetDistribution, Word, build_block_structure, rsk, rsk_shape
from .errors import TableauxLabError

__version__ = "0.1.0"

__all__ = ["AlphabetDistribution", "TableauxLabError", "Word", "build_block_structure", "rsk", "rsk_shape"]
