"""Width measures and dynamic programming for digraphs with bounded bi-mim-width."""

__version__ = "0.1.0"
FORMAT_VERSION = 1
