"""Bundled survey tables used by tests and documentation examples."""
