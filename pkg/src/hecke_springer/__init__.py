"""Exact computations around affine Hecke algebras and coherent Springer theory."""
