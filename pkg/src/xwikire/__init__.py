"""Build, split and score a multilingual reading-comprehension relation extraction dataset."""

__version__ = "0.1.0"
