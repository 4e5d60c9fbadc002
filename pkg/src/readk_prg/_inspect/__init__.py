"""Inspect AI surface for fooling measurements."""
