"""Tests for comparisons, reports and the command line."""
