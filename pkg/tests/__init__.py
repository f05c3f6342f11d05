"""Tests for lte-ga-scheduler."""
