"""Artifact renderings: DOT, CSV, JSON documents, Markdown and PDF census reports."""
