"""Cross-document alignment of QA-based predicate-argument propositions."""

__version__ = "0.1.0"
