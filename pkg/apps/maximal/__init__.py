"""
Maximal app: weighted dyadic maximal operators, shifted-grid fractional maximal
functions and discrete Riesz potentials.
"""
