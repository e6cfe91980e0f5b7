"""Tests for the rate-region toolkit."""
