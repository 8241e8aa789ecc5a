"""Cube: structured, cut-free Prolog with until/unless and a denotational engine."""
