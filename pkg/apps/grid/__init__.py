"""
Grid app: piecewise-constant functions on the unit cube and the dyadic cube tree.
"""
