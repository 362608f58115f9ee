"""Bundled scenario files (JSON resources)."""
