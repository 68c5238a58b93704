"""Core engines of the news monitoring pipeline."""
