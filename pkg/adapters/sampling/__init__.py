"""
Point process sampler adapters for the Point Pattern Rate-Distortion Toolkit.
"""
