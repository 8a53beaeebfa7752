"""
KBSM calculator - core engine

Rings, words, diagrams, the state sum and the rewriting engine; no I/O.
"""
