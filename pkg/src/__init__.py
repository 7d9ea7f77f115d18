"""Blockade Lab: blockades, combs, cographs and rainbow (k choose 2)-freeness."""
