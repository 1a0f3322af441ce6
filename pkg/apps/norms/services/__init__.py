# Classical function-space norms
