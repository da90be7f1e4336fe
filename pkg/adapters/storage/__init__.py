"""
Codebook persistence and CSV result adapters.
"""
