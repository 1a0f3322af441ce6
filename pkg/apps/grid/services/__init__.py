# Grid representation, integral tables and the SPGF codec
