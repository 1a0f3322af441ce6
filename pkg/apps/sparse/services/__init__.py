# Sparse families, domination and SR norms
