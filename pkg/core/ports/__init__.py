"""
Port interfaces for samplers, center heuristics, codebook storage and result output.
"""
