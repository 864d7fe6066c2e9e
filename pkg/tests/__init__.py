"""Tests for nonlocal-spectra."""
