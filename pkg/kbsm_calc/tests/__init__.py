"""
KBSM calculator - test suite

This package contains all tests for the core engine and the CLI.
"""
