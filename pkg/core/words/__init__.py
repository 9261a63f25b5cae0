"""Word algebras for the stuffle and shuffle products and the regularization decomposition."""
