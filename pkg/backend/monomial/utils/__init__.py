"""Configuration, logging, storage, errors and randomness helpers."""
