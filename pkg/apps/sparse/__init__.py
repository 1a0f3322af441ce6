"""
Sparse app: sparse families, constructive sparse domination and the
SR_{p,q}log^α norms.
"""
