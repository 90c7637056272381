"""Next-term solver for number sequence problems built on model vectors."""

__version__ = "0.1.0"
