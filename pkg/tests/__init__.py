"""Tests for gafzero."""
