"""The translation engine."""
