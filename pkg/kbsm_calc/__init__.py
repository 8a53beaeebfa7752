"""
KBSM calculator.

Exact Kauffman bracket skein module computations for links in F x S^1,
with F a disk, an annulus or a disk with two holes.
"""

__version__ = "0.1.0"
