"""Test suite for the toricsh toolkit."""
