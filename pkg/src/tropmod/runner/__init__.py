"""Command dispatch: run configuration and the command runner."""
