"""
Norms app: Lebesgue, Morrey, RMT (packing), congruent RMT and Lorentz norms.
"""
