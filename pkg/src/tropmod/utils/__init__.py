"""Shared infrastructure: errors, settings, logging, workers, persistence."""
