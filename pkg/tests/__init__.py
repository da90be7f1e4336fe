"""
Test modules for the Point Pattern Rate-Distortion Toolkit.
"""
