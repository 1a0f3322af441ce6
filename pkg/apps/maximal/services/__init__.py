# Maximal functions and Riesz potentials
