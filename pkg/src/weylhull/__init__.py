"""Exact geometry of Weyl-group orbit hulls and Kostant convexity checks."""
