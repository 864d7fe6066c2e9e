"""Tests for the eigenvalue methods."""
