"""
KBSM calculator - CLI interface

This package contains the command-line front end.
"""
