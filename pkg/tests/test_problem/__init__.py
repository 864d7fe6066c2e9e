"""Tests for potentials, grids, jets and the integral operators."""
