"""Test suite for dwssp."""
