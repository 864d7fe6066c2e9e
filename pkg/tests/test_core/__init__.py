"""Tests for configuration, errors and parallel helpers."""
